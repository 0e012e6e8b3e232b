#pragma once

// Dirichlet L-functions through the Hurwitz decomposition
//
//   L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q).
//
// Two evaluation routes share that identity:
//
//  * direct: each zeta(s, a/q) by Euler-Maclaurin (small q);
//  * moments: zeta(s, a/q) = (a/q)^{-s} + zeta(s, 1 + a/q) and the second
//    part is Taylor-expanded around a/q = 1/2, so
//      L = sum_{n<q} chi(n) n^{-s} + q^{-s} sum_{j>=1} c_j(s) M_j,
//      c_j(s) = (-1)^j (s)_j / j! zeta(s + j, 3/2),
//      M_j = sum_a chi(a) (a/q - 1/2)^j.
//    The moments do not depend on s and are computed once per character;
//    the expansion converges like 3^{-j}.
//
// Since sum_a chi(a) = 0 for non-principal chi, the 1/(s-1) poles cancel and
// both routes are regular at s = 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <type_traits>
#include <vector>

#include "zetafam/dual.hpp"
#include "zetafam/hurwitz.hpp"

namespace zetafam {

struct LOptions {
  double target = kDefaultPrecision;
  /// Moduli up to this use per-residue Euler-Maclaurin.
  std::uint32_t direct_threshold = 200;
};

enum class LMethod { direct, moments };

namespace detail {

inline constexpr unsigned kMaxMoment = 64;

/// log n for n <= limit, shared across engines.
inline std::shared_ptr<const std::vector<double>> shared_log_table(std::uint32_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<double>> current;
  std::lock_guard lock(mutex);
  if (!current || current->size() <= limit) {
    const std::uint32_t size = std::max<std::uint32_t>(limit + 1, current ? static_cast<std::uint32_t>(current->size()) * 2 : 1u << 16);
    auto table = std::make_shared<std::vector<double>>(size);
    (*table)[0] = 0.0;
    for (std::uint32_t n = 1; n < size; ++n) (*table)[n] = std::log(static_cast<double>(n));
    current = std::move(table);
  }
  return current;
}

inline double char_real(std::int8_t v) { return v; }
inline Cplx char_value(std::int8_t v) { return static_cast<double>(v); }
inline Cplx char_value(const Cplx& v) { return v; }
inline bool char_zero(std::int8_t v) { return v == 0; }
inline bool char_zero(const Cplx& v) { return v == Cplx(0.0); }

}  // namespace detail

/// L(s, chi) for one primitive character chi mod q, chi given on [0, q).
/// V is std::int8_t for real characters, Cplx otherwise.
template <class V>
class LSeries {
 public:
  LSeries(std::vector<V> chi, LOptions options = {})
      : chi_(std::move(chi)), q_(static_cast<std::uint32_t>(chi_.size())), options_(options) {
    if (q_ == 0) throw domain_error("LSeries: empty character table");
    if (q_ > 1) {
      const V minus_one = chi_[q_ - 1];
      parity_ = detail::char_value(minus_one).real() < 0 ? -1 : 1;
    }
    method_ = q_ <= options_.direct_threshold ? LMethod::direct : LMethod::moments;
    if (q_ > 1) prepare_moments();
  }

  std::uint32_t modulus() const { return q_; }
  bool principal() const { return q_ == 1; }
  LMethod method() const { return method_; }
  const std::vector<V>& table() const { return chi_; }

  /// L(s, chi); for the principal character zeta(s), with a pole at s = 1.
  Cplx value(Cplx s) const { return value_of(evaluate(s, method_)); }

  /// L(s, chi), or (s-1) zeta(s) for the principal character.
  Cplx pole_removed(Cplx s) const {
    if (principal()) {
      const Cplx reg = detail::euler_maclaurin(s, 1.0, options_.target, true);
      return 1.0 + (s - 1.0) * reg;
    }
    return value(s);
  }

  /// Value and s-derivative of L(s, chi) (non-principal) or zeta(s).
  DualC value_and_derivative(Cplx s) const { return evaluate(DualC(s, 1.0), method_); }

  /// Evaluate by a chosen route; S is Cplx or DualC.
  template <class S>
  S evaluate(const S& s, LMethod method) const {
    const Cplx sv = value_of(s);
    if (principal()) {
      if (sv == Cplx(1.0)) throw pole_error("zeta(s): pole at s = 1");
      return detail::euler_maclaurin(s, 1.0, options_.target, true) + S(1.0) / (s - S(1.0));
    }
    if (method == LMethod::direct) return evaluate_direct(s);
    return evaluate_moments(s);
  }

 private:
  using Acc = std::conditional_t<std::is_same_v<V, std::int8_t>, double, Cplx>;

  template <class S>
  S evaluate_direct(const S& s) const {
    S sum = S(0.0);
    for (std::uint32_t a = 1; a < q_; ++a) {
      if (detail::char_zero(chi_[a])) continue;
      const double x = static_cast<double>(a) / q_;
      sum += S(detail::char_value(chi_[a])) * detail::euler_maclaurin(s, x, options_.target, true);
    }
    return sum * real_power_neg(static_cast<double>(q_), s);
  }

  void prepare_moments() {
    moments_.assign(detail::kMaxMoment + 1, Acc{});
    weight_ = 0.0;
    // pair a with q - a: chi(q - a) = parity * chi(a), (q-a)/q - 1/2 = -(a/q - 1/2)
    const unsigned first = parity_ == 1 ? 2 : 1;
    const double inv_q = 1.0 / q_;
    for (std::uint32_t a = 1; 2 * a < q_; ++a) {
      if (detail::char_zero(chi_[a])) continue;
      const Acc c = static_cast<Acc>(chi_[a]);
      weight_ += 2.0;
      const double t = a * inv_q - 0.5;
      const double t2 = t * t;
      double p = first == 1 ? t : t2;
      for (unsigned j = first; j <= detail::kMaxMoment; j += 2) {
        moments_[j] += c * p;
        p *= t2;
      }
    }
    for (auto& m : moments_) m *= 2.0;
  }

  template <class S>
  S partial_sum(const S& s) const {
    const auto logs = detail::shared_log_table(q_);
    const Cplx sv = value_of(s);
    if (sv.imag() == 0.0) {
      // real s: accumulate in doubles
      const double sigma = sv.real();
      Acc value{}, deriv{};
      for (std::uint32_t n = 1; n < q_; ++n) {
        if (detail::char_zero(chi_[n])) continue;
        const double ln = (*logs)[n];
        const double term = std::exp(-sigma * ln);
        const Acc c = static_cast<Acc>(chi_[n]);
        value += c * term;
        if constexpr (std::is_same_v<S, DualC>) deriv += c * (-ln * term);
      }
      if constexpr (std::is_same_v<S, DualC>)
        return DualC(Cplx(value), Cplx(deriv) * s.d);
      else
        return S(Cplx(value));
    }
    S sum = S(0.0);
    for (std::uint32_t n = 1; n < q_; ++n) {
      if (detail::char_zero(chi_[n])) continue;
      sum += S(detail::char_value(chi_[n])) * exp(-(*logs)[n] * s);
    }
    return sum;
  }

  template <class S>
  S evaluate_moments(const S& s) const {
    S sum = partial_sum(s);
    const S q_neg_s = real_power_neg(static_cast<double>(q_), s);
    const double q_scale = std::abs(value_of(q_neg_s));
    const unsigned first = parity_ == 1 ? 2 : 1;
    // c_j built incrementally: (s)_j / j!
    S poch = S(1.0);
    S tail = S(0.0);
    const double s_abs = std::abs(value_of(s));
    for (unsigned j = 1; j <= detail::kMaxMoment; ++j) {
      poch = poch * (s + S(static_cast<double>(j - 1))) * (1.0 / j);
      if (j < first || (j - first) % 2 != 0) continue;
      const S zj = detail::euler_maclaurin(s + S(static_cast<double>(j)), 1.5, 1e-16, false);
      const S cj = (j % 2 ? -1.0 : 1.0) * poch * zj;
      tail += cj * S(Cplx(moments_[j]));
      const double bound = q_scale * abs_bound(cj) * weight_ * std::ldexp(1.0, -static_cast<int>(j)) * 1.5;
      if (j > s_abs + 4 && bound < 0.1 * options_.target) return sum + q_neg_s * tail;
    }
    throw numerical_error("LSeries: moment expansion did not converge");
  }

  std::vector<V> chi_;
  std::uint32_t q_;
  LOptions options_;
  int parity_ = 1;
  LMethod method_;
  std::vector<Acc> moments_;
  double weight_ = 0.0;
};

/// Real-character engine for chi_D.
using QuadraticLSeries = LSeries<std::int8_t>;

}  // namespace zetafam
