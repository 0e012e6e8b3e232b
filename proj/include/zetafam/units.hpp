#pragma once

// Fundamental units of real quadratic orders by continued fractions.

#include <cstdint>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "zetafam/arith.hpp"

namespace zetafam {

/// Minimal unit of the maximal order of Q(sqrt(d)).
///
/// For d = 1 mod 4 the unit is (x + y sqrt(d)) / 2 with x^2 - d y^2 = +-4,
/// otherwise x + y sqrt(d) with x^2 - d y^2 = +-1.  `period` is the number of
/// partial quotients consumed before the unit appeared.
struct ContinuedFractionUnit {
  std::int64_t d = 0;
  BigInt x;
  BigInt y;
  unsigned period = 0;
  int norm = 0;  // +1 or -1

  bool half_integral() const { return d % 4 == 1; }

  /// x^2 - d y^2, exact.
  BigInt pell_value() const { return x * x - BigInt(d) * y * y; }

  /// log of the unit, always > 0.
  double regulator() const {
    using Float = boost::multiprecision::cpp_bin_float_50;
    Float v = Float(x) + Float(y) * boost::multiprecision::sqrt(Float(d));
    if (half_integral()) v /= 2;
    return static_cast<double>(boost::multiprecision::log(v));
  }
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// Scans convergents p/q of omega = (1 + sqrt d)/2 (d = 1 mod 4) or sqrt d;
/// every unit > 1 of the order is a convergent, so the first hit is minimal.
inline ContinuedFractionUnit fundamental_unit(std::int64_t d) {
  if (d < 2 || !is_squarefree(d)) throw domain_error("fundamental_unit: d must be squarefree and >= 2");
  const bool half = d % 4 == 1;
  const auto root = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(d)));
  // complete quotient (P + sqrt d) / Q
  std::int64_t P = half ? 1 : 0;
  std::int64_t Q = half ? 2 : 1;
  BigInt p_prev = 1, p_prev2 = 0;
  BigInt q_prev = 0, q_prev2 = 1;
  const BigInt target = half ? 4 : 1;
  for (unsigned k = 0;; ++k) {
    // floor((P + sqrt d)/Q); sqrt d is irrational
    const std::int64_t a = Q > 0 ? detail::floor_div(P + root, Q) : -(detail::floor_div(P + root, -Q) + 1);
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    ContinuedFractionUnit u;
    u.d = d;
    u.x = half ? BigInt(2 * p - q) : p;
    u.y = q;
    const BigInt value = u.pell_value();
    if (value == target || value == -target) {
      u.norm = value > 0 ? 1 : -1;
      u.period = k + 1;
      return u;
    }
    const std::int64_t next_P = a * Q - P;
    const std::int64_t next_Q = (d - next_P * next_P) / Q;
    P = next_P;
    Q = next_Q;
  }
}

}  // namespace zetafam
