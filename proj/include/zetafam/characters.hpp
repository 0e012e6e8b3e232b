#pragma once

// Dirichlet characters: real quadratic characters as int8 tables and the
// full character group mod n built from explicit generators of (Z/nZ)^x.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "zetafam/arith.hpp"
#include "zetafam/dual.hpp"

namespace zetafam {

/// chi_D(a) for a in [0, |D|), filled multiplicatively from chi_D(p).
inline std::vector<std::int8_t> quadratic_character_table(std::int64_t D) {
  const auto q = static_cast<std::uint32_t>(D < 0 ? -D : D);
  std::vector<std::int8_t> chi(q, 0);
  if (q == 1) {
    chi[0] = 1;
    return chi;
  }
  const auto sieve = shared_spf_sieve(q);
  chi[1] = 1;
  for (std::uint32_t n = 2; n < q; ++n) {
    const std::uint32_t p = (*sieve)[n];
    if (p == n)
      chi[n] = static_cast<std::int8_t>(kronecker_symbol(D, n));
    else
      chi[n] = static_cast<std::int8_t>(chi[p] * chi[n / p]);
  }
  return chi;
}

/// Primitive character with values on [0, conductor); induced from a
/// character mod `modulus`.
struct DirichletCharacter {
  std::uint32_t modulus = 1;
  std::uint32_t conductor = 1;
  std::vector<Cplx> values;
  int parity = 1;  // chi(-1)
  bool real = true;

  bool principal() const { return conductor == 1; }
};

namespace detail {

struct GroupGenerator {
  std::uint64_t element;  // generator lifted to Z/nZ
  std::uint64_t order;
};

// Generators of (Z/nZ)^x, one or two per prime-power component.
inline std::vector<GroupGenerator> unit_group_generators(std::uint32_t n) {
  std::vector<GroupGenerator> gens;
  for (const auto& pp : factorize(n).factors) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < pp.exponent; ++i) pe *= pp.prime;
    const std::uint64_t rest = n / pe;
    auto lift = [&](std::uint64_t g) {
      // x = g mod pe, x = 1 mod rest
      for (std::uint64_t x = g; x < n || n == pe; x += pe) {
        if (x % rest == 1 % rest) return x % n;
      }
      return g;
    };
    if (pp.prime == 2) {
      if (pp.exponent == 2) gens.push_back({lift(3), 2});
      if (pp.exponent >= 3) {
        gens.push_back({lift(pe - 1), 2});
        gens.push_back({lift(5), pe / 4});
      }
      continue;
    }
    const std::uint64_t phi = pe / pp.prime * (pp.prime - 1);
    for (std::uint64_t g = 2; g < pe; ++g) {
      if (std::gcd(g, pe) != 1) continue;
      if (multiplicative_order(g, pe) == phi) {
        gens.push_back({lift(g), phi});
        break;
      }
    }
  }
  return gens;
}

}  // namespace detail

/// All phi(n) characters mod n, each replaced by its primitive version.
inline std::vector<DirichletCharacter> characters_mod(std::uint32_t n) {
  if (n == 0) throw domain_error("characters_mod: n = 0");
  const auto gens = detail::unit_group_generators(n);
  // discrete logs: element -> exponent vector
  std::uint64_t group_order = 1;
  for (const auto& g : gens) group_order *= g.order;
  std::vector<std::vector<std::uint64_t>> dlog(n);
  std::vector<std::uint64_t> exps(gens.size(), 0);
  for (std::uint64_t idx = 0; idx < group_order; ++idx) {
    std::uint64_t rem = idx, element = 1 % n;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      exps[i] = rem % gens[i].order;
      rem /= gens[i].order;
      element = mulmod(element, powmod(gens[i].element, exps[i], n), n);
    }
    dlog[element] = exps;
  }
  std::vector<DirichletCharacter> out;
  for (std::uint64_t idx = 0; idx < group_order; ++idx) {
    std::vector<std::uint64_t> j(gens.size());
    std::uint64_t rem = idx;
    bool real = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      j[i] = rem % gens[i].order;
      rem /= gens[i].order;
      if ((2 * j[i]) % gens[i].order != 0) real = false;
    }
    auto value_mod_n = [&](std::uint64_t a) -> Cplx {
      if (std::gcd<std::uint64_t>(a % n, n) != 1) return 0.0;
      const auto& e = dlog[a % n];
      // sum of j_i e_i / ord_i as an exact fraction of the group exponent
      double turns = 0.0;
      std::int64_t sign = 1;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::uint64_t num = (j[i] * e[i]) % gens[i].order;
        turns += static_cast<double>(num) / static_cast<double>(gens[i].order);
        if (real && num != 0) sign = -sign;
      }
      if (real) return static_cast<double>(sign);
      return std::polar(1.0, 2.0 * std::numbers::pi * turns);
    };
    // conductor: least d | n with chi trivial on units = 1 mod d
    std::uint32_t conductor = n;
    for (std::uint32_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      bool trivial = true;
      for (std::uint64_t a = 1; a < n && trivial; a += d)
        if (std::gcd<std::uint64_t>(a, n) == 1 && std::abs(value_mod_n(a) - Cplx(1.0)) > 1e-9) trivial = false;
      if (trivial) {
        conductor = d;
        break;
      }
    }
    DirichletCharacter chi;
    chi.modulus = n;
    chi.conductor = conductor;
    chi.real = real;
    chi.values.assign(conductor, 0.0);
    if (conductor == 1) {
      chi.values[0] = 1.0;
    } else {
      for (std::uint32_t b = 1; b < conductor; ++b) {
        if (std::gcd(b, conductor) != 1) continue;
        std::uint64_t a = b;
        while (std::gcd<std::uint64_t>(a, n) != 1) a += conductor;
        chi.values[b] = value_mod_n(a);
      }
    }
    chi.parity = value_mod_n(n - 1).real() > 0 ? 1 : -1;
    if (n <= 2) chi.parity = 1;
    out.push_back(std::move(chi));
  }
  return out;
}

}  // namespace zetafam
