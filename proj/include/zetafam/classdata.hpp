#pragma once

// Class numbers, regulators, roots of unity and the residue of zeta_K at s = 1
//
//   kappa_K = 2^{r1} (2 pi)^{r2} h R / (w sqrt|D|).
//
// Imaginary quadratic class numbers come from counting reduced forms, real
// quadratic ones from the analytic class number formula with the regulator
// of the continued-fraction unit as exact input.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

#include "zetafam/analytic.hpp"
#include "zetafam/numberfield.hpp"
#include "zetafam/units.hpp"

namespace zetafam {

enum class ClassSource { computed, ingested };

struct ClassData {
  std::uint64_t h = 1;
  double R = 1.0;
  std::uint64_t w = 2;
  ClassSource source = ClassSource::computed;
};

/// Number of SL2(Z)-reduced forms (a, b, c) with b^2 - 4ac = D < 0.
inline std::uint64_t class_number_imaginary(std::int64_t D) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw domain_error("class_number_imaginary: " + std::to_string(D) + " is not a negative fundamental discriminant");
  const std::int64_t N = -D;
  std::uint64_t h = 0;
  // a <= sqrt(|D|/3)
  for (std::int64_t a = 1; 3 * a * a <= N; ++a) {
    const std::int64_t four_a = 4 * a;
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (((b - D) & 1) != 0) continue;
      const std::int64_t num = b * b + N;
      if (num % four_a != 0) continue;
      const std::int64_t c = num / four_a;
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      ++h;
    }
  }
  return h;
}

/// w_K: 4 for Q(i), 6 for Q(sqrt(-3)), lcm(2, n) for Q(zeta_n), 2 otherwise.
inline std::uint64_t roots_of_unity(const FieldDescriptor& F) {
  if (const auto* q = F.as<Quadratic>()) {
    if (q->m == -1) return 4;
    if (q->m == -3) return 6;
    return 2;
  }
  if (const auto* c = F.as<Cyclotomic>()) return std::lcm<std::uint64_t>(2, c->n);
  if (const auto* r = F.as<Ingested>()) {
    if (r->roots_of_unity) return *r->roots_of_unity;
    throw unsupported_kind("roots_of_unity: ingested record carries no torsion order");
  }
  if (F.as<Rationals>()) return 2;
  throw unsupported_kind("roots_of_unity: not available for " + F.id());
}

/// Sanity bound w_K <= 4 n_K^2 + 2.
inline bool roots_of_unity_plausible(std::uint64_t w, unsigned degree) {
  return w >= 2 && w % 2 == 0 && w <= 4ull * degree * degree + 2;
}

inline ClassData class_data_imaginary(std::int64_t D) {
  ClassData cd;
  cd.h = class_number_imaginary(D);
  cd.R = 1.0;
  cd.w = D == -4 ? 4 : D == -3 ? 6 : 2;
  return cd;
}

/// Analytic class number before rounding: sqrt(D) L(1, chi_D) / (2R).
struct RealClassNumber {
  double unrounded;
  double regulator;
};

inline RealClassNumber real_class_number_unrounded(std::int64_t D, double target = kDefaultPrecision) {
  if (D <= 1 || !is_fundamental_discriminant(D))
    throw domain_error("class_data_real: " + std::to_string(D) + " is not a positive fundamental discriminant");
  const std::int64_t d = D % 4 == 0 ? D / 4 : D;
  const double R = fundamental_unit(d).regulator();
  const double L1 = dirichlet_L(1.0, D, target).real();
  return {std::sqrt(static_cast<double>(D)) * L1 / (2.0 * R), R};
}

inline ClassData class_data_real(std::int64_t D, double target = kDefaultPrecision) {
  const auto raw = real_class_number_unrounded(D, target);
  const double h = std::round(raw.unrounded);
  if (h < 1 || std::abs(raw.unrounded - h) > 0.1)
    throw numerical_error("class_data_real: analytic class number " + std::to_string(raw.unrounded) +
                          " is not within 0.1 of an integer for D = " + std::to_string(D));
  ClassData cd;
  cd.h = static_cast<std::uint64_t>(h);
  cd.R = raw.regulator;
  cd.w = 2;
  return cd;
}

/// Class data of a quadratic field, or the record's own data for ingested fields.
inline ClassData class_data(const FieldDescriptor& F) {
  if (const auto* q = F.as<Quadratic>()) {
    const std::int64_t D = quadratic_discriminant(q->m);
    return D < 0 ? class_data_imaginary(D) : class_data_real(D);
  }
  if (const auto* r = F.as<Ingested>()) {
    if (!r->class_number || !r->regulator || !r->roots_of_unity)
      throw unsupported_kind("class_data: record " + r->label + " lacks h, R or w");
    return {*r->class_number, *r->regulator, *r->roots_of_unity, ClassSource::ingested};
  }
  if (F.as<Rationals>()) return {};
  throw unsupported_kind("class_data: only quadratic fields are computed; " + F.id() + " needs ingested data");
}

struct ResidueComponents {
  unsigned phi_R = 0;
  unsigned phi_C = 0;
  std::uint64_t h = 1;
  double R = 1.0;
  std::uint64_t w = 2;
  double abs_disc = 1.0;
  double log_abs_disc = 0.0;  // exact log for discriminants beyond double range
};

struct ResidueValue {
  double kappa = 0.0;
  double log_kappa = 0.0;
  ResidueComponents components;

  /// Re-evaluates the formula from the stored components.
  static ResidueValue from_components(const ResidueComponents& c) {
    ResidueValue out;
    out.components = c;
    out.log_kappa = c.phi_R * std::numbers::ln2 + c.phi_C * std::log(2.0 * std::numbers::pi) +
                    std::log(static_cast<double>(c.h)) + std::log(c.R) - std::log(static_cast<double>(c.w)) -
                    0.5 * c.log_abs_disc;
    const double direct = std::pow(2.0, c.phi_R) * std::pow(2.0 * std::numbers::pi, c.phi_C) *
                          static_cast<double>(c.h) * c.R / (static_cast<double>(c.w) * std::sqrt(c.abs_disc));
    out.kappa = std::isfinite(direct) && direct > 0 ? direct : std::exp(out.log_kappa);
    return out;
  }
};

inline ResidueValue residue_kappa(const FieldInvariants& inv, const ClassData& cd) {
  ResidueComponents c;
  c.phi_R = inv.signature.real;
  c.phi_C = inv.signature.complex;
  c.h = cd.h;
  c.R = cd.R;
  c.w = cd.w;
  c.log_abs_disc = log_abs(inv.discriminant);
  c.abs_disc = std::exp(c.log_abs_disc);
  if (boost::multiprecision::abs(inv.discriminant) < (BigInt(1) << 53))
    c.abs_disc = boost::multiprecision::abs(inv.discriminant).convert_to<double>();
  return ResidueValue::from_components(c);
}

/// log(h R) / g_K.
inline double brauer_siegel_ratio(const FieldInvariants& inv, const ClassData& cd) {
  if (!(inv.genus > 0)) throw domain_error("brauer_siegel_ratio: genus must be positive");
  return (std::log(static_cast<double>(cd.h)) + std::log(cd.R)) / inv.genus;
}

enum class ValidationStatus { validated, flagged, unverifiable };

struct ClassValidation {
  ValidationStatus status = ValidationStatus::unverifiable;
  double relative_error = 0.0;  // |kappa(record) - L(1)| / L(1) for quadratic records
  std::string reason;
};

inline constexpr double kIngestTolerance = 1e-3;

/// Checks ingested class data against the analytic class number formula
/// (quadratic records) and the w_K size bound; never recomputes the data.
inline ClassValidation validate_class_data(const FieldInvariants& inv, const ClassData& cd) {
  ClassValidation out;
  if (!roots_of_unity_plausible(cd.w, inv.degree)) {
    out.status = ValidationStatus::flagged;
    out.reason = "w outside the 4 n^2 + 2 bound";
    return out;
  }
  if (inv.degree != 2 || inv.discriminant > (BigInt(1) << 40) || inv.discriminant < -(BigInt(1) << 40)) {
    out.reason = "no analytic check for degree " + std::to_string(inv.degree);
    return out;
  }
  const auto D = inv.discriminant.convert_to<std::int64_t>();
  if (!is_fundamental_discriminant(D)) {
    out.status = ValidationStatus::flagged;
    out.reason = "discriminant is not fundamental";
    return out;
  }
  const double analytic = dirichlet_L(1.0, D).real();
  const double kappa = residue_kappa(inv, cd).kappa;
  out.relative_error = std::abs(kappa - analytic) / analytic;
  out.status = out.relative_error <= kIngestTolerance ? ValidationStatus::validated : ValidationStatus::flagged;
  if (out.status == ValidationStatus::flagged) out.reason = "residue formula off by " + std::to_string(out.relative_error);
  return out;
}

}  // namespace zetafam
