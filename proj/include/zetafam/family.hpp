#pragma once

// Families of number fields, Tsfasman-Vladut invariants, limit zeta
// functions and the experiment drivers built on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zetafam/analytic.hpp"
#include "zetafam/classdata.hpp"
#include "zetafam/numberfield.hpp"
#include "zetafam/parallel.hpp"
#include "zetafam/table.hpp"

namespace zetafam {

enum class Provenance { estimated, synthetic };

/// Phi_alpha(K) / g_K for one member of a family prefix.
struct TVSample {
  std::string field_id;
  double genus = 0.0;
  double phi_R = 0.0;
  double phi_C = 0.0;
  std::map<std::uint64_t, double> phi;
  bool profile_complete = true;  // false when some q <= X was undeterminable
};

struct TVInvariants {
  double phi_R = 0.0;
  double phi_C = 0.0;
  std::map<std::uint64_t, double> phi;  // prime power q -> phi_q
  std::uint64_t bound_X = 0;
  Provenance provenance = Provenance::synthetic;
  std::vector<TVSample> history;  // full ratio sequence for estimated invariants

  static TVInvariants synthetic(std::map<std::uint64_t, double> phi, double phi_R = 0.0, double phi_C = 0.0) {
    TVInvariants inv;
    for (const auto& [q, v] : phi) {
      if (q < 2 || !prime_power_split(q)) throw validation_error("synthetic invariants: " + std::to_string(q) + " is not a prime power");
      if (!(v >= 0.0) || !std::isfinite(v)) throw validation_error("synthetic invariants: phi must be finite and non-negative");
      inv.bound_X = std::max(inv.bound_X, q);
    }
    if (!(phi_R >= 0.0 && phi_C >= 0.0) || !std::isfinite(phi_R) || !std::isfinite(phi_C))
      throw validation_error("synthetic invariants: phi_R, phi_C must be finite and non-negative");
    inv.phi = std::move(phi);
    inv.phi_R = phi_R;
    inv.phi_C = phi_C;
    return inv;
  }
};

// ---------------------------------------------------------------------------
// Family descriptions

/// Fundamental D < 0 by increasing |D|, optionally inside [min_abs_disc, max_abs_disc].
struct ImaginaryQuadratic {
  std::uint64_t min_abs_disc = 3;
  std::uint64_t max_abs_disc = std::numeric_limits<std::int64_t>::max();
};
/// Fundamental D > 1 by increasing D.
struct RealQuadratic {
  std::uint64_t min_abs_disc = 5;
  std::uint64_t max_abs_disc = std::numeric_limits<std::int64_t>::max();
};
/// Quadratic fields in which every listed prime splits.
struct SplitConstrained {
  bool imaginary = true;
  std::vector<std::uint32_t> split_primes;
  std::uint64_t min_abs_disc = 3;
  std::uint64_t max_abs_disc = std::numeric_limits<std::int64_t>::max();
};
/// Q(zeta_{p^e}) for e = min_exponent, min_exponent + 1, ...
struct CyclotomicPrimePower {
  std::uint32_t p = 3;
  unsigned min_exponent = 1;
};
struct IngestedFamily {
  std::vector<FieldDescriptor> fields;
};
struct Synthetic {
  TVInvariants invariants;
};

struct FamilySpec {
  std::variant<ImaginaryQuadratic, RealQuadratic, SplitConstrained, CyclotomicPrimePower, IngestedFamily, Synthetic> generator;
  std::size_t N = 1;

  bool synthetic() const { return std::holds_alternative<Synthetic>(generator); }
  std::string name() const {
    switch (generator.index()) {
      case 0: return "imag-quadratic";
      case 1: return "real-quadratic";
      case 2: return "split-quadratic";
      case 3: return "cyclotomic";
      case 4: return "ingested";
      default: return "synthetic";
    }
  }
};

namespace detail {

template <class Accept>
std::vector<FieldDescriptor> scan_discriminants(int sign, std::uint64_t lo, std::uint64_t hi, std::size_t N, Accept accept) {
  std::vector<FieldDescriptor> out;
  for (std::uint64_t a = std::max<std::uint64_t>(lo, 3); a <= hi && out.size() < N; ++a) {
    const std::int64_t D = sign * static_cast<std::int64_t>(a);
    if (!is_fundamental_discriminant(D) || !accept(D)) continue;
    out.push_back(FieldDescriptor::quadratic_from_discriminant(D));
  }
  return out;
}

}  // namespace detail

/// Deterministic prefix of N fields.  Synthetic specs yield no fields.
inline std::vector<FieldDescriptor> enumerate(const FamilySpec& spec) {
  if (spec.N < 1) throw validation_error("enumerate: N must be at least 1");
  std::vector<FieldDescriptor> out = std::visit(
      [&](const auto& g) -> std::vector<FieldDescriptor> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ImaginaryQuadratic>) {
          return detail::scan_discriminants(-1, g.min_abs_disc, g.max_abs_disc, spec.N, [](std::int64_t) { return true; });
        } else if constexpr (std::is_same_v<T, RealQuadratic>) {
          return detail::scan_discriminants(1, std::max<std::uint64_t>(g.min_abs_disc, 5), g.max_abs_disc, spec.N,
                                            [](std::int64_t) { return true; });
        } else if constexpr (std::is_same_v<T, SplitConstrained>) {
          for (auto p : g.split_primes)
            if (!is_prime(p)) throw validation_error("split-constrained family: " + std::to_string(p) + " is not prime");
          return detail::scan_discriminants(g.imaginary ? -1 : 1, g.min_abs_disc, g.max_abs_disc, spec.N, [&](std::int64_t D) {
            return std::all_of(g.split_primes.begin(), g.split_primes.end(),
                               [&](std::uint32_t p) { return kronecker_symbol(D, p) == 1; });
          });
        } else if constexpr (std::is_same_v<T, CyclotomicPrimePower>) {
          if (!is_prime(g.p)) throw validation_error("cyclotomic family: p must be prime");
          std::vector<FieldDescriptor> fields;
          unsigned e = std::max(g.min_exponent, g.p == 2 ? 2u : 1u);
          for (; fields.size() < spec.N; ++e) {
            std::uint64_t n = 1;
            for (unsigned i = 0; i < e; ++i) n *= g.p;
            if (n > (1u << 20)) break;
            fields.push_back(FieldDescriptor::cyclotomic(static_cast<std::uint32_t>(n)));
          }
          return fields;
        } else if constexpr (std::is_same_v<T, IngestedFamily>) {
          const std::size_t n = std::min(spec.N, g.fields.size());
          return std::vector<FieldDescriptor>(g.fields.begin(), g.fields.begin() + static_cast<std::ptrdiff_t>(n));
        } else {
          return {};
        }
      },
      spec.generator);
  if (out.empty() && !spec.synthetic()) throw empty_family_error("family " + spec.name() + " is empty after filtering");
  return out;
}

// ---------------------------------------------------------------------------
// Tsfasman-Vladut invariants

inline TVSample tv_sample(const FieldDescriptor& F, std::uint64_t X) {
  const FieldInvariants inv = field_invariants(F);
  if (!(inv.genus > 0)) throw domain_error("tv_sample: field of genus 0");
  TVSample s;
  s.field_id = F.id();
  s.genus = inv.genus;
  s.phi_R = inv.signature.real / inv.genus;
  s.phi_C = inv.signature.complex / inv.genus;
  try {
    const SplittingProfile prof = splitting_profile(F, X);
    for (std::uint32_t p : primes_up_to(X)) {
      const bool excluded = std::find(prof.excluded_primes.begin(), prof.excluded_primes.end(), p) != prof.excluded_primes.end();
      if (excluded) {
        s.profile_complete = false;
        continue;
      }
      for (std::uint64_t q = p; q <= X; q *= p) {
        s.phi[q] = *prof.count(q) / inv.genus;
        if (q > X / p) break;
      }
    }
  } catch (const unsupported_kind&) {
    s.profile_complete = false;
  }
  return s;
}

/// Terminal ratios Phi_alpha(K_N)/g_{K_N}; the whole sequence is kept in history.
inline TVInvariants estimate_tv_invariants(const FamilySpec& spec, std::uint64_t X) {
  if (const auto* syn = std::get_if<Synthetic>(&spec.generator)) return syn->invariants;
  if (X < 2) throw validation_error("estimate_tv_invariants: X must be at least 2");
  const auto fields = enumerate(spec);
  TVInvariants inv;
  inv.provenance = Provenance::estimated;
  inv.bound_X = X;
  for (const auto& F : fields)
    if (field_invariants(F).genus > 0) inv.history.push_back(tv_sample(F, X));
  if (inv.history.empty()) return inv;
  // terminal element in genus order
  const auto last = std::max_element(inv.history.begin(), inv.history.end(),
                                     [](const TVSample& a, const TVSample& b) { return a.genus < b.genus; });
  inv.phi_R = last->phi_R;
  inv.phi_C = last->phi_C;
  inv.phi = last->phi;
  return inv;
}

// ---------------------------------------------------------------------------
// Limit zeta function and the closed-form limits

struct LimitZeta {
  Cplx value = 1.0;
  Cplx log_value = 0.0;
  double largest_term = 0.0;  // max |phi_q log(1 - q^{-s})| over retained q
  std::uint64_t largest_q = 0;
  std::size_t terms = 0;
};

/// prod_{q <= X} (1 - q^{-s})^{-phi_q}, computed in log form.
inline LimitZeta limit_zeta(const TVInvariants& inv, Cplx s) {
  if (!(s.real() >= 0.5)) throw domain_error("limit_zeta: Re s must be at least 1/2");
  LimitZeta out;
  for (const auto& [q, phi] : inv.phi) {
    if (phi == 0.0) continue;
    const Cplx term = -phi * std::log(1.0 - std::exp(-std::log(static_cast<double>(q)) * s));
    out.log_value += term;
    ++out.terms;
    if (std::abs(term) > out.largest_term) {
      out.largest_term = std::abs(term);
      out.largest_q = q;
    }
  }
  out.value = std::exp(out.log_value);
  return out;
}

/// -sum phi_q log q / (q - 1).
inline double ek_limit(const TVInvariants& inv) {
  double sum = 0.0;
  for (const auto& [q, phi] : inv.phi) {
    const double qd = static_cast<double>(q);
    sum -= phi * std::log(qd) / (qd - 1.0);
  }
  return sum;
}

struct TvzRhs {
  double value = 1.0;
  /// Bound on sum_{q > X} phi_q/(q - 1); known only when the support is explicit.
  std::optional<double> tail_bound;
};

/// 1 + sum phi_q log(q/(q-1)) - phi_R log 2 - phi_C log 2 pi.
inline TvzRhs tvz_rhs(const TVInvariants& inv) {
  TvzRhs out;
  for (const auto& [q, phi] : inv.phi) {
    const double qd = static_cast<double>(q);
    out.value -= phi * std::log1p(-1.0 / qd);
  }
  out.value -= inv.phi_R * std::numbers::ln2 + inv.phi_C * std::log(2.0 * std::numbers::pi);
  if (inv.provenance == Provenance::synthetic) out.tail_bound = 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Experiment drivers

struct DriverOptions {
  std::uint64_t X = 100;
  unsigned jobs = default_jobs();
  double precision = kDefaultPrecision;
};

namespace detail {

inline std::string disc_string(const FieldInvariants& inv) {
  return BigInt(boost::multiprecision::abs(inv.discriminant)).str();
}

inline std::string format_s(Cplx s) {
  if (s.imag() == 0.0) return format_double(s.real());
  return format_double(s.real()) + (s.imag() < 0 ? "-" : "+") + format_double(std::abs(s.imag())) + "i";
}

inline ExperimentTable prediction_only(const FamilySpec& spec, const char* theorem, double prediction, const std::string& s) {
  ExperimentTable t;
  t.metadata.theorem = theorem;
  t.metadata.family = spec.name();
  t.metadata.s = s;
  t.metadata.X = std::get<Synthetic>(spec.generator).invariants.bound_X;
  t.metadata.N = 0;
  t.metadata.family_prediction = prediction;
  ExperimentRow row;
  row.field_id = "synthetic";
  row.prediction = prediction;
  row.flags.push_back("prediction_only");
  t.add(std::move(row));
  return t;
}

// Runs fn over the fields, collecting rows in enumeration order.
template <class Fn>
ExperimentTable run_rows(const FamilySpec& spec, const char* theorem, const std::string& s, double prediction,
                         const DriverOptions& opt, Fn fn) {
  const auto fields = enumerate(spec);
  auto rows = parallel_map<ExperimentRow>(fields.size(), opt.jobs, [&](std::size_t i) {
    const auto& F = fields[i];
    ExperimentRow row;
    row.field_id = F.id();
    try {
      const FieldInvariants inv = field_invariants(F);
      row.abs_disc = disc_string(inv);
      row.genus = inv.genus;
      row.prediction = prediction;
      if (!(inv.genus > 0)) {
        row.flags.push_back("degenerate");
        return row;
      }
      fn(F, inv, row);
    } catch (const std::exception& e) {
      row.measured.reset();
      row.flags.push_back(std::string("error:") + e.what());
    }
    return row;
  });
  ExperimentTable t;
  t.metadata.theorem = theorem;
  t.metadata.family = spec.name();
  t.metadata.s = s;
  t.metadata.X = opt.X;
  t.metadata.N = fields.size();
  t.metadata.family_prediction = prediction;
  for (auto& r : rows) {
    if (r.has_flag("error")) ++t.metadata.failed;
    else if (!r.measured) ++t.metadata.excluded;
    t.add(std::move(r));
  }
  t.sort_by_genus();
  return t;
}

}  // namespace detail

/// log((s-1) zeta_K(s)) / g_K against log zeta_fam(s).
inline ExperimentTable run_theorem1(const FamilySpec& spec, Cplx s, const DriverOptions& opt = {}) {
  if (!(s.real() > 0.5) || s == Cplx(1.0)) throw domain_error("run_theorem1: need Re s > 1/2 and s != 1");
  check_eval_window(s, opt.precision);
  const std::string s_text = detail::format_s(s);
  const bool real_s = s.imag() == 0.0;
  const TVInvariants inv = estimate_tv_invariants(spec, opt.X);
  const double prediction = limit_zeta(inv, s).log_value.real();
  if (spec.synthetic()) return detail::prediction_only(spec, "main1", prediction, s_text);
  auto t = detail::run_rows(spec, "main1", s_text, prediction, opt, [&](const FieldDescriptor& F, const FieldInvariants& finv, ExperimentRow& row) {
    LOptions lo;
    lo.target = opt.precision;
    const Cplx v = ZetaEngine(F, lo).pole_removed(s);
    if (real_s) {
      const double x = v.real();
      if (x < 0) row.flags.push_back("neg");
      row.measured = std::log(std::abs(x)) / finv.genus;
    } else {
      row.flags.push_back("modulus");
      row.measured = std::log(std::abs(v)) / finv.genus;
    }
  });
  if (!real_s) t.metadata.notes.push_back("complex s: measured is log|(s-1)zeta_K(s)|/g and prediction log|zeta_fam(s)|");
  return t;
}

/// log|rho_K| / g_K against log zeta_fam(1/2); near-zero central values are excluded.
inline ExperimentTable run_theorem2(const FamilySpec& spec, const DriverOptions& opt = {}) {
  const TVInvariants inv = estimate_tv_invariants(spec, opt.X);
  const double prediction = limit_zeta(inv, 0.5).log_value.real();
  if (spec.synthetic()) return detail::prediction_only(spec, "main2", prediction, "0.5");
  const double zeta_half = ZetaEngine::rationals().value(0.5).real();
  auto t = detail::run_rows(spec, "main2", "0.5", prediction, opt, [&](const FieldDescriptor& F, const FieldInvariants& finv, ExperimentRow& row) {
    LOptions lo;
    lo.target = opt.precision;
    const CentralData cd = central_data(ZetaEngine(F, lo));
    row.aux["r"] = cd.r;
    row.aux["rho"] = cd.rho;
    if (cd.flag_near_zero) {
      row.flags.push_back("near_zero");
      return;
    }
    if (cd.rho / zeta_half < 0) row.flags.push_back("neg_l_half");
    row.measured = std::log(std::abs(cd.rho)) / finv.genus;
  });
  t.metadata.notes.push_back("rows flagged near_zero (|L(1/2)| <= 1e-8) are excluded from the statistic");
  return t;
}

/// gamma_K / g_K against -sum phi_q log q/(q-1).
inline ExperimentTable run_ek(const FamilySpec& spec, const DriverOptions& opt = {}) {
  const TVInvariants inv = estimate_tv_invariants(spec, opt.X);
  const double prediction = ek_limit(inv);
  if (spec.synthetic()) return detail::prediction_only(spec, "ek", prediction, "");
  return detail::run_rows(spec, "ek", "", prediction, opt, [&](const FieldDescriptor& F, const FieldInvariants& finv, ExperimentRow& row) {
    LOptions lo;
    lo.target = opt.precision;
    const auto ek = euler_kronecker(ZetaEngine(F, lo));
    row.aux["gamma_K"] = ek.value;
    row.aux["laurent_limit"] = ek.laurent_limit;
    row.measured = ek.value / finv.genus;
  });
}

inline constexpr double kResidueIdentityTolerance = 1e-10;

/// log(hR)/g against tvz_rhs, with log(kappa)/g against log zeta_fam(1) in aux.
inline ExperimentTable run_brauer_siegel(const FamilySpec& spec, const DriverOptions& opt = {}) {
  const TVInvariants inv = estimate_tv_invariants(spec, opt.X);
  const double prediction = tvz_rhs(inv).value;
  const double kappa_prediction = limit_zeta(inv, 1.0).log_value.real();
  if (spec.synthetic()) {
    auto t = detail::prediction_only(spec, "tvz", prediction, "1");
    t.metadata.notes.push_back("log zeta_fam(1) = " + format_double(kappa_prediction));
    return t;
  }
  auto t = detail::run_rows(spec, "tvz", "1", prediction, opt, [&](const FieldDescriptor& F, const FieldInvariants& finv, ExperimentRow& row) {
    if (const auto* rec = F.as<Ingested>(); rec && !(rec->class_number && rec->regulator && rec->roots_of_unity)) {
      row.flags.push_back("missing_class_data");
      return;
    }
    const ClassData cd = class_data(F);
    const double log_hR = std::log(static_cast<double>(cd.h)) + std::log(cd.R);
    // kappa from the L-values where they exist, else from the residue formula
    double log_kappa;
    if (F.is_quadratic() || F.as<Cyclotomic>()) {
      LOptions lo;
      lo.target = opt.precision;
      log_kappa = std::log(ZetaEngine(F, lo).residue());
    } else {
      log_kappa = residue_kappa(finv, cd).log_kappa;
    }
    const double identity = log_hR + finv.signature.real * std::numbers::ln2 +
                            finv.signature.complex * std::log(2.0 * std::numbers::pi) -
                            std::log(static_cast<double>(cd.w)) - finv.genus;
    row.measured = log_hR / finv.genus;
    row.aux["h"] = static_cast<double>(cd.h);
    row.aux["R"] = cd.R;
    row.aux["log_kappa_over_g"] = log_kappa / finv.genus;
    row.aux["log_kappa_prediction"] = kappa_prediction;
    row.aux["identity_residual"] = log_kappa - identity;
    if (!(std::abs(log_kappa - identity) <= kResidueIdentityTolerance)) row.flags.push_back("identity_violation");
    if (cd.source == ClassSource::ingested) row.flags.push_back("ingested");
  });
  t.metadata.notes.push_back("aux.log_kappa_over_g is compared with aux.log_kappa_prediction = log zeta_fam(1)");
  t.metadata.notes.push_back("ingested records without h, R or w are flagged missing_class_data and counted as excluded");
  return t;
}

}  // namespace zetafam
