#pragma once

// Hurwitz zeta by Euler-Maclaurin summation.
//
//   zeta(s, a) = sum_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
//              + sum_{k=1}^{K} B_{2k}/(2k)! (s)_{2k-1} (N+a)^{-s-2k+1}
//
// with N = max(50, ceil(10|s|)) and K grown until the next term drops below
// the target (K <= 25).

#include <algorithm>
#include <cmath>

#include "zetafam/bernoulli.hpp"
#include "zetafam/dual.hpp"
#include "zetafam/errors.hpp"

namespace zetafam {

inline constexpr double kDefaultPrecision = 1e-12;
inline constexpr unsigned kMaxEulerMaclaurinTerms = 25;

namespace detail {

/// Euler-Maclaurin core.  When `regularized`, returns zeta(s, a) - 1/(s-1),
/// which is analytic at s = 1; otherwise zeta(s, a) itself.
template <class S>
S euler_maclaurin(const S& s, double a, double target, bool regularized) {
  const double s_abs = std::abs(value_of(s));
  const int N = std::max(50, static_cast<int>(std::ceil(10.0 * s_abs)));
  S sum = S(0.0);
  for (int n = 0; n < N; ++n) sum += real_power_neg(n + a, s);
  const double x = N + a;
  const double lx = std::log(x);
  const S x_neg_s = real_power_neg(x, s);
  if (regularized) {
    // ((N+a)^{1-s} - 1)/(s-1) = -log(x) * (e^t - 1)/t,  t = (1-s) log(x)
    sum += -lx * expm1_over((S(1.0) - s) * lx);
  } else {
    sum += x_neg_s * x / (s - S(1.0));
  }
  sum += 0.5 * x_neg_s;
  const auto& B = bernoulli_over_factorial();
  S pochhammer = s;               // (s)_{2k-1}
  S power = x_neg_s * (1.0 / x);  // x^{-s-2k+1}
  const double inv_x2 = 1.0 / (x * x);
  for (unsigned k = 1; k <= kMaxEulerMaclaurinTerms; ++k) {
    const S term = B[k] * pochhammer * power;
    sum += term;
    if (abs_bound(term) <= target * abs_bound(sum)) return sum;
    pochhammer = pochhammer * (s + S(2.0 * k - 1)) * (s + S(2.0 * k));
    power = power * inv_x2;
  }
  throw numerical_error("hurwitz_zeta: Euler-Maclaurin tail did not converge");
}

}  // namespace detail

/// Validates the supported window Re s > 0.4, |Im s| <= 50 and the target range.
inline void check_eval_window(Cplx s, double target) {
  if (!(s.real() > 0.4) || std::abs(s.imag()) > 50.0)
    throw domain_error("s outside the supported window Re s > 0.4, |Im s| <= 50");
  if (!(target >= 1e-15 && target <= 1e-6)) throw domain_error("precision target outside [1e-15, 1e-6]");
}

/// zeta(s, a) for 0 < a <= 1 in the supported window.
inline Cplx hurwitz_zeta(Cplx s, double a, double target = kDefaultPrecision) {
  check_eval_window(s, target);
  if (s == Cplx(1.0, 0.0)) throw pole_error("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw domain_error("hurwitz_zeta: a must lie in (0, 1]");
  return detail::euler_maclaurin(s, a, target, false);
}

/// zeta(s, a) - 1/(s-1); finite at s = 1.
inline Cplx hurwitz_zeta_regular(Cplx s, double a, double target = kDefaultPrecision) {
  check_eval_window(s, target);
  if (!(a > 0.0 && a <= 1.0)) throw domain_error("hurwitz_zeta_regular: a must lie in (0, 1]");
  return detail::euler_maclaurin(s, a, target, true);
}

}  // namespace zetafam
