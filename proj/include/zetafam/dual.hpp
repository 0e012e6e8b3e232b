#pragma once

// Forward-mode derivative carrier.  Scalar code written against the small
// set of free functions below (exp, log, abs_bound, real_power) runs
// unchanged on std::complex<double> and on Dual<std::complex<double>>.

#include <cmath>
#include <complex>

namespace zetafam {

using Cplx = std::complex<double>;

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // derivative with respect to s

  Dual() = default;
  Dual(T value, T deriv = T{}) : v(value), d(deriv) {}
  Dual(double value) : v(value), d(0.0) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
  Dual& operator*=(double k) { v *= k; d *= k; return *this; }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator*(Dual a, double k) { return a *= k; }
  friend Dual operator*(double k, Dual a) { return a *= k; }
  friend Dual operator-(const Dual& a) { return Dual(-a.v, -a.d); }
};

using DualC = Dual<Cplx>;

inline Cplx exp(const Cplx& z) { return std::exp(z); }
inline DualC exp(const DualC& z) {
  const Cplx e = std::exp(z.v);
  return DualC(e, e * z.d);
}

/// Magnitude used for convergence tests.
inline double abs_bound(const Cplx& z) { return std::abs(z); }
inline double abs_bound(const DualC& z) { return std::abs(z.v) + std::abs(z.d); }

inline Cplx value_of(const Cplx& z) { return z; }
inline Cplx value_of(const DualC& z) { return z.v; }

/// x^{-s} for real x > 0.
template <class S>
S real_power_neg(double x, const S& s) {
  return exp(-std::log(x) * s);
}

/// (e^t - 1)/t, analytic at t = 0.
template <class S>
S expm1_over(const S& t) {
  if (std::abs(value_of(t)) < 0.5) {
    S term = S(1.0);
    S sum = S(1.0);
    for (int k = 1; k < 24; ++k) {
      term = term * t * (1.0 / (k + 1));
      sum += term;
    }
    return sum;
  }
  return (exp(t) - S(1.0)) / t;
}

}  // namespace zetafam
