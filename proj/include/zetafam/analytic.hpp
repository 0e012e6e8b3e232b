#pragma once

// Dedekind zeta functions of quadratic and cyclotomic fields as products of
// Dirichlet L-functions, Euler-Kronecker constants and central values.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "zetafam/characters.hpp"
#include "zetafam/lseries.hpp"
#include "zetafam/numberfield.hpp"

namespace zetafam {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// A point of evaluation inside the supported window.
struct EvalPoint {
  Cplx s;
  double precision_target = kDefaultPrecision;

  EvalPoint(Cplx s_, double target = kDefaultPrecision) : s(s_), precision_target(target) {
    check_eval_window(s, precision_target);
  }
};

/// zeta_K(s) = zeta(s) * prod over non-principal characters of L(s, chi*).
class ZetaEngine {
 public:
  explicit ZetaEngine(const FieldDescriptor& F, LOptions options = {})
      : options_(options), zeta_(std::vector<std::int8_t>{1}, options) {
    if (const auto* q = F.as<Quadratic>()) {
      real_.emplace_back(quadratic_character_table(quadratic_discriminant(q->m)), options);
    } else if (const auto* c = F.as<Cyclotomic>()) {
      for (const auto& chi : characters_mod(c->n)) {
        if (chi.principal()) continue;
        if (chi.real) {
          std::vector<std::int8_t> table;
          for (const auto& v : chi.values) table.push_back(static_cast<std::int8_t>(std::lround(v.real())));
          real_.emplace_back(std::move(table), options);
        } else {
          complex_.emplace_back(chi.values, options);
        }
      }
    } else if (!F.as<Rationals>()) {
      throw unsupported_kind("dedekind zeta: only quadratic and cyclotomic fields (and Q)");
    }
  }

  static ZetaEngine rationals(LOptions options = {}) { return ZetaEngine(FieldDescriptor::rationals(), options); }

  /// Product of the non-principal L-factors.
  Cplx l_product(Cplx s) const {
    Cplx p = 1.0;
    for (const auto& l : real_) p *= l.value(s);
    for (const auto& l : complex_) p *= l.value(s);
    return p;
  }

  Cplx value(Cplx s) const {
    if (s == Cplx(1.0)) throw pole_error("dedekind zeta: pole at s = 1");
    return zeta_.value(s) * l_product(s);
  }

  /// (s-1) zeta_K(s), finite at s = 1.
  Cplx pole_removed(Cplx s) const { return zeta_.pole_removed(s) * l_product(s); }

  /// Residue at s = 1 from the L-values.
  double residue() const { return pole_removed(1.0).real(); }

  /// sum over non-principal factors of L'(1)/L(1); real for Galois-stable sets.
  double log_derivative_at_one() const {
    Cplx sum = 0.0;
    for (const auto& l : real_) {
      const DualC v = l.value_and_derivative(1.0);
      sum += v.d / v.v;
    }
    for (const auto& l : complex_) {
      const DualC v = l.value_and_derivative(1.0);
      sum += v.d / v.v;
    }
    return sum.real();
  }

  const std::vector<QuadraticLSeries>& real_factors() const { return real_; }
  const std::vector<LSeries<Cplx>>& complex_factors() const { return complex_; }

 private:
  LOptions options_;
  LSeries<std::int8_t> zeta_;
  std::vector<QuadraticLSeries> real_;
  std::vector<LSeries<Cplx>> complex_;
};

/// L(s, chi_D) for a fundamental discriminant D (D = 1 gives zeta(s)).
inline Cplx dirichlet_L(Cplx s, std::int64_t D, double target = kDefaultPrecision) {
  check_eval_window(s, target);
  if (D != 1 && !is_fundamental_discriminant(D)) throw domain_error("dirichlet_L: D is not a fundamental discriminant");
  LOptions options;
  options.target = target;
  return QuadraticLSeries(quadratic_character_table(D), options).value(s);
}

struct ZetaValue {
  Cplx value;
  Cplx pole_removed;  // (s-1) zeta_K(s)
};

inline ZetaValue dedekind_zeta(const FieldDescriptor& F, const EvalPoint& pt) {
  if (pt.s == Cplx(1.0)) throw pole_error("dedekind_zeta: s = 1 without pole removal; use pole_removed_zeta");
  LOptions options;
  options.target = pt.precision_target;
  const ZetaEngine engine(F, options);
  const Cplx removed = engine.pole_removed(pt.s);
  return {removed / (pt.s - 1.0), removed};
}

/// (s-1) zeta_K(s), including s = 1 where it equals the residue.
inline Cplx pole_removed_zeta(const FieldDescriptor& F, const EvalPoint& pt) {
  LOptions options;
  options.target = pt.precision_target;
  return ZetaEngine(F, options).pole_removed(pt.s);
}

struct EulerKronecker {
  double value;          // closed form, returned
  double closed_form;    // gamma + sum L'(1, chi)/L(1, chi)
  double laurent_limit;  // Richardson limit of the pole-removed zeta
};

inline constexpr double kEulerKroneckerTolerance = 1e-6;

/// gamma_K = c_0 / c_{-1} from the Laurent limit of (s-1) zeta_K(s):
/// symmetric differences at h = 1e-2 and 1e-3 combined by Richardson.
inline double euler_kronecker_laurent(const ZetaEngine& engine) {
  const double kappa = engine.residue();
  auto g = [&](double h) {
    return (engine.pole_removed(1.0 + h).real() - engine.pole_removed(1.0 - h).real()) / (2.0 * h * kappa);
  };
  const double h1 = 1e-2, h2 = 1e-3;
  return (h1 * h1 * g(h2) - h2 * h2 * g(h1)) / (h1 * h1 - h2 * h2);
}

inline double euler_kronecker_closed_form(const ZetaEngine& engine) {
  return kEulerGamma + engine.log_derivative_at_one();
}

/// Both routes; throws numerical_error if they disagree beyond 1e-6.
inline EulerKronecker euler_kronecker(const ZetaEngine& engine) {
  EulerKronecker ek;
  ek.closed_form = euler_kronecker_closed_form(engine);
  ek.laurent_limit = euler_kronecker_laurent(engine);
  ek.value = ek.closed_form;
  if (!(std::abs(ek.closed_form - ek.laurent_limit) < kEulerKroneckerTolerance))
    throw numerical_error("euler_kronecker: closed form and Laurent limit disagree");
  return ek;
}

inline EulerKronecker euler_kronecker(const FieldDescriptor& F) { return euler_kronecker(ZetaEngine(F)); }

inline constexpr double kNearZeroThreshold = 1e-8;

struct CentralData {
  unsigned r = 0;  // detected order of vanishing at s = 1/2
  double rho = 0;  // leading Taylor coefficient
  bool flag_near_zero = false;
};

/// Central value data of a quadratic field from zeta(1/2) L(1/2, chi_D).
inline CentralData central_data(const ZetaEngine& engine) {
  if (engine.real_factors().size() != 1 || !engine.complex_factors().empty())
    throw unsupported_kind("central_data: quadratic fields only");
  const auto& L = engine.real_factors().front();
  const double zeta_half = LSeries<std::int8_t>(std::vector<std::int8_t>{1}).value(0.5).real();
  const double l_half = L.value(0.5).real();
  CentralData out;
  if (std::abs(l_half) > kNearZeroThreshold) {
    out.r = 0;
    out.rho = zeta_half * l_half;
    return out;
  }
  out.flag_near_zero = true;
  const double h = 1e-3;
  const double below = L.value(0.5 - h).real();
  const double above = L.value(0.5 + h).real();
  if ((below < 0) != (above < 0)) {
    out.r = 1;
    out.rho = zeta_half * L.value_and_derivative(0.5).d.real();
  } else {
    out.r = 2;
    out.rho = zeta_half * (above + below - 2.0 * l_half) / (2.0 * h * h);
  }
  return out;
}

inline CentralData central_data(const FieldDescriptor& F) {
  if (!F.is_quadratic()) throw unsupported_kind("central_data: quadratic fields only");
  return central_data(ZetaEngine(F));
}

}  // namespace zetafam
