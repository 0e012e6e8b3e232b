#pragma once

// Field descriptors and their exact local data: discriminant, signature,
// genus and splitting profiles Phi_q.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zetafam/arith.hpp"
#include "zetafam/polynomial.hpp"

namespace zetafam {

/// Numbers of real and complex places.
struct Signature {
  unsigned real = 0;
  unsigned complex = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Rationals {};
struct Quadratic {
  std::int64_t m;  // squarefree, != 0, 1
};
struct Cyclotomic {
  std::uint32_t n;  // n >= 3, n != 2 mod 4
};
struct Monogenic {
  ZPoly poly;  // monic irreducible
};
/// Field known only through an external record.
struct Ingested {
  std::string label;
  unsigned degree = 0;
  BigInt discriminant;
  Signature signature;
  std::optional<ZPoly> poly;
  std::optional<std::uint64_t> class_number;
  std::optional<double> regulator;
  std::optional<std::uint64_t> roots_of_unity;
};

/// Immutable description of one number field; constructors validate.
class FieldDescriptor {
 public:
  using Kind = std::variant<Rationals, Quadratic, Cyclotomic, Monogenic, Ingested>;

  static FieldDescriptor rationals() { return FieldDescriptor(Rationals{}); }

  static FieldDescriptor quadratic(std::int64_t m) {
    if (m == 0 || m == 1 || !is_squarefree(m))
      throw validation_error("quadratic field needs squarefree m != 0, 1 (got " + std::to_string(m) + ")");
    return FieldDescriptor(Quadratic{m});
  }

  /// Q(sqrt(D)) from a fundamental discriminant.
  static FieldDescriptor quadratic_from_discriminant(std::int64_t D) {
    if (!is_fundamental_discriminant(D))
      throw validation_error("not a fundamental discriminant: " + std::to_string(D));
    return quadratic(((D % 4) + 4) % 4 == 1 ? D : D / 4);
  }

  /// Normalizes n = 2 mod 4 to n/2; Q(zeta_1) = Q(zeta_2) = Q is rejected.
  static FieldDescriptor cyclotomic(std::uint32_t n) {
    if (n % 4 == 2) n /= 2;
    if (n < 3) throw validation_error("cyclotomic field needs n >= 3");
    return FieldDescriptor(Cyclotomic{n});
  }

  static FieldDescriptor monogenic(ZPoly poly) {
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    if (!is_monic(poly)) throw validation_error("monogenic field needs a monic polynomial of degree >= 1");
    if (degree(poly) < 2) throw validation_error("monogenic field needs degree >= 2");
    if (!is_irreducible(poly)) throw validation_error("polynomial is reducible over Q: " + to_string(poly));
    return FieldDescriptor(Monogenic{std::move(poly)});
  }

  static FieldDescriptor ingested(Ingested record) {
    if (record.signature.real + 2 * record.signature.complex != record.degree)
      throw validation_error("ingested record: r1 + 2 r2 != degree");
    if (boost::multiprecision::abs(record.discriminant) <= 1)
      throw validation_error("ingested record: |D| must exceed 1");
    return FieldDescriptor(std::move(record));
  }

  const Kind& kind() const { return kind_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(&kind_);
  }
  bool is_quadratic() const { return as<Quadratic>() != nullptr; }

  std::string id() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Rationals>)
            return "Q";
          else if constexpr (std::is_same_v<T, Quadratic>)
            return "Q(sqrt(" + std::to_string(k.m) + "))";
          else if constexpr (std::is_same_v<T, Cyclotomic>)
            return "Q(zeta_" + std::to_string(k.n) + ")";
          else if constexpr (std::is_same_v<T, Monogenic>)
            return "Q[x]/(" + to_string(k.poly) + ")";
          else
            return k.label;
        },
        kind_);
  }

 private:
  explicit FieldDescriptor(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// Fundamental discriminant of Q(sqrt(m)).
inline std::int64_t quadratic_discriminant(std::int64_t m) { return ((m % 4) + 4) % 4 == 1 ? m : 4 * m; }

struct FieldInvariants {
  unsigned degree = 1;
  BigInt discriminant = 1;
  bool discriminant_exact = true;
  Signature signature{1, 0};
  double genus = 0.0;  // log sqrt|D|
};

namespace detail {

inline BigInt cyclotomic_discriminant(std::uint32_t n) {
  const std::uint64_t phi = euler_phi(n);
  BigInt num = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(phi));
  for (const auto& pp : factorize(n).factors)
    num /= boost::multiprecision::pow(BigInt(pp.prime), static_cast<unsigned>(phi / (pp.prime - 1)));
  return ((phi / 2) % 2) ? BigInt(-num) : num;
}

}  // namespace detail

inline FieldInvariants field_invariants(const FieldDescriptor& F) {
  FieldInvariants inv;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Rationals>) {
          // degenerate calibration field
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          inv.degree = 2;
          inv.discriminant = quadratic_discriminant(k.m);
          inv.signature = k.m > 0 ? Signature{2, 0} : Signature{0, 1};
        } else if constexpr (std::is_same_v<T, Cyclotomic>) {
          const auto phi = static_cast<unsigned>(euler_phi(k.n));
          inv.degree = phi;
          inv.discriminant = detail::cyclotomic_discriminant(k.n);
          inv.signature = Signature{0, phi / 2};
        } else if constexpr (std::is_same_v<T, Monogenic>) {
          const int n = degree(k.poly);
          inv.degree = static_cast<unsigned>(n);
          const BigInt disc = discriminant(k.poly);
          const auto index = monogenic_index(k.poly, disc);
          inv.discriminant = index ? BigInt(disc / (*index * *index)) : disc;
          inv.discriminant_exact = index.has_value();
          const unsigned r1 = real_root_count(k.poly);
          inv.signature = Signature{r1, (static_cast<unsigned>(n) - r1) / 2};
        } else {
          inv.degree = k.degree;
          inv.discriminant = k.discriminant;
          inv.signature = k.signature;
        }
      },
      F.kind());
  inv.genus = inv.discriminant == 1 ? 0.0 : 0.5 * log_abs(inv.discriminant);
  return inv;
}

/// Phi_q(K) for prime powers q <= bound (inclusive), zero entries omitted.
struct SplittingProfile {
  std::uint64_t bound = 0;
  std::map<std::uint64_t, unsigned> counts;
  unsigned phi_R = 0;
  unsigned phi_C = 0;
  /// Primes whose splitting is not determined (p | disc(f) for polynomial fields).
  std::vector<std::uint64_t> excluded_primes;

  /// Phi_q, or empty when q > bound, q is not a prime power, or p is excluded.
  std::optional<unsigned> count(std::uint64_t q) const {
    if (q > bound) return std::nullopt;
    const auto pp = prime_power_split(q);
    if (!pp) return std::nullopt;
    for (auto p : excluded_primes)
      if (p == pp->prime) return std::nullopt;
    const auto it = counts.find(q);
    return it == counts.end() ? 0u : it->second;
  }
};

namespace detail {

// p^f if <= bound
inline std::optional<std::uint64_t> bounded_power(std::uint64_t p, std::uint64_t f, std::uint64_t bound) {
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < f; ++i) {
    if (q > bound / p) return std::nullopt;
    q *= p;
  }
  return q;
}

inline void polynomial_profile(const ZPoly& poly, SplittingProfile& out) {
  const BigInt disc = discriminant(poly);
  for (std::uint32_t p : primes_up_to(out.bound)) {
    if (disc % p == 0) {
      out.excluded_primes.push_back(p);
      continue;
    }
    for (const auto& [f, c] : fp::distinct_degree_counts(fp::reduce(poly, p), p))
      if (auto q = bounded_power(p, f, out.bound)) out.counts[*q] += c;
  }
}

}  // namespace detail

inline SplittingProfile splitting_profile(const FieldDescriptor& F, std::uint64_t X) {
  const FieldInvariants inv = field_invariants(F);
  SplittingProfile out;
  out.bound = X;
  out.phi_R = inv.signature.real;
  out.phi_C = inv.signature.complex;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Rationals>) {
          for (std::uint32_t p : primes_up_to(X)) out.counts[p] = 1;
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          const std::int64_t D = quadratic_discriminant(k.m);
          for (std::uint32_t p : primes_up_to(X)) {
            switch (kronecker_symbol(D, p)) {
              case 1: out.counts[p] += 2; break;
              case 0: out.counts[p] += 1; break;
              default:
                if (auto q = detail::bounded_power(p, 2, X)) out.counts[*q] += 1;
            }
          }
        } else if constexpr (std::is_same_v<T, Cyclotomic>) {
          for (std::uint32_t p : primes_up_to(X)) {
            std::uint64_t m = k.n;
            while (m % p == 0) m /= p;
            const std::uint64_t f = multiplicative_order(p, m);
            const std::uint64_t g = euler_phi(m) / f;
            if (auto q = detail::bounded_power(p, f, X)) out.counts[*q] += static_cast<unsigned>(g);
          }
        } else if constexpr (std::is_same_v<T, Monogenic>) {
          detail::polynomial_profile(k.poly, out);
        } else {
          if (!k.poly) throw unsupported_kind("splitting_profile: ingested record without defining polynomial");
          detail::polynomial_profile(*k.poly, out);
        }
      },
      F.kind());
  return out;
}

/// Coefficients a_1..a_M of prod_q (1 - q^{-s})^{-Phi_q}.
inline std::vector<std::int64_t> euler_product_coefficients(const SplittingProfile& profile, std::uint64_t M) {
  if (M > profile.bound) throw domain_error("euler_product_coefficients: M exceeds the profile bound");
  if (!profile.excluded_primes.empty())
    throw unsupported_kind("euler_product_coefficients: profile has excluded primes");
  std::vector<std::int64_t> a(M + 1, 0);
  if (M == 0) return a;
  a[1] = 1;
  // local series e_p(k) for prime p, k with p^k <= M
  std::map<std::uint64_t, std::vector<std::int64_t>> local;
  for (std::uint32_t p : primes_up_to(M)) {
    unsigned kmax = 0;
    for (std::uint64_t pk = p; pk <= M / p; pk *= p) ++kmax;
    ++kmax;
    std::vector<std::int64_t> e(kmax + 1, 0);
    e[0] = 1;
    std::uint64_t q = p;
    for (unsigned f = 1; f <= kmax; ++f) {
      const auto it = profile.counts.find(q);
      const unsigned count = it == profile.counts.end() ? 0 : it->second;
      // multiply by (1 - T^f)^{-1} count times
      for (unsigned r = 0; r < count; ++r)
        for (unsigned k = f; k <= kmax; ++k) e[k] += e[k - f];
      if (f < kmax) q *= p;
    }
    local.emplace(p, std::move(e));
  }
  const auto sieve = shared_spf_sieve(static_cast<std::uint32_t>(M));
  for (std::uint64_t n = 2; n <= M; ++n) {
    const std::uint32_t p = (*sieve)[static_cast<std::uint32_t>(n)];
    std::uint64_t rest = n;
    unsigned k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    a[n] = local.at(p)[k] * a[rest];
  }
  return a;
}

/// Number of integral ideals of norm m, m = 1..M (index 0 unused).
inline std::vector<std::int64_t> dirichlet_coefficients(const FieldDescriptor& F, std::uint64_t M) {
  if (M > 1'000'000) throw domain_error("dirichlet_coefficients: M > 10^6");
  if (const auto* q = F.as<Quadratic>()) {
    // a_m = sum_{d | m} chi_D(d)
    const std::int64_t D = quadratic_discriminant(q->m);
    std::vector<std::int64_t> a(M + 1, 0);
    for (std::uint64_t d = 1; d <= M; ++d) {
      const int chi = kronecker_symbol(D, static_cast<std::int64_t>(d));
      if (chi == 0) continue;
      for (std::uint64_t m = d; m <= M; m += d) a[m] += chi;
    }
    return a;
  }
  if (F.as<Cyclotomic>() || F.as<Rationals>())
    return euler_product_coefficients(splitting_profile(F, std::max<std::uint64_t>(M, 2)), M);
  throw unsupported_kind("dirichlet_coefficients: only quadratic and cyclotomic fields");
}

}  // namespace zetafam
