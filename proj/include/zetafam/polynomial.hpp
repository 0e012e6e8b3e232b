#pragma once

// Integer polynomials: discriminants, factorization patterns modulo p,
// Dedekind's index criterion, irreducibility over Q and real-root counts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zetafam/arith.hpp"

namespace zetafam {

/// Coefficients in ascending order: f = c[0] + c[1] x + ... + c[n] x^n.
using ZPoly = std::vector<BigInt>;
using QPoly = std::vector<BigRational>;
using FpPoly = std::vector<std::uint64_t>;

inline int degree(const ZPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

inline bool is_monic(const ZPoly& f) { return degree(f) >= 1 && f[degree(f)] == 1; }

inline ZPoly derivative(const ZPoly& f) {
  ZPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long long>(i));
  if (d.empty()) d.push_back(0);
  return d;
}

inline BigInt evaluate(const ZPoly& f, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::string to_string(const ZPoly& f) {
  std::ostringstream out;
  bool first = true;
  for (int i = degree(f); i >= 0; --i) {
    const BigInt& c = f[i];
    if (c == 0) continue;
    BigInt mag = boost::multiprecision::abs(c);
    if (c < 0)
      out << "-";
    else if (!first)
      out << "+";
    if (mag != 1 || i == 0) {
      out << mag;
      if (i > 0) out << "*";
    }
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

namespace detail {

// Bareiss fraction-free elimination; exact determinant.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace detail

/// Res(f, g) as the Sylvester determinant.
inline BigInt resultant(const ZPoly& f, const ZPoly& g) {
  const int m = degree(f), n = degree(g);
  if (m < 0 || n < 0) return 0;
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i) s[row][row + i] = f[m - i];
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i) s[n + row][row + i] = g[n - i];
  return detail::bareiss_determinant(std::move(s));
}

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
inline BigInt discriminant(const ZPoly& f) {
  const int n = degree(f);
  if (n < 1) throw domain_error("discriminant: degree < 1");
  BigInt r = resultant(f, derivative(f)) / f[n];
  return ((n * (n - 1) / 2) % 2) ? BigInt(-r) : r;
}

// ---------------------------------------------------------------------------
// F_p[x]

namespace fp {

inline void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline FpPoly reduce(const ZPoly& f, std::uint64_t p) {
  FpPoly out(f.size());
  const BigInt P = p;
  for (std::size_t i = 0; i < f.size(); ++i) {
    BigInt r = f[i] % P;
    if (r < 0) r += P;
    out[i] = r.convert_to<std::uint64_t>();
  }
  trim(out);
  return out;
}

inline FpPoly sub(FpPoly a, const FpPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  trim(out);
  return out;
}

/// Quotient and remainder; b nonzero.
inline std::pair<FpPoly, FpPoly> divmod(FpPoly a, const FpPoly& b, std::uint64_t p) {
  trim(a);
  if (b.empty()) throw domain_error("fp::divmod: division by zero");
  if (a.size() < b.size()) return {{}, a};
  const std::uint64_t inv = inverse(b.back(), p);
  FpPoly q(a.size() - b.size() + 1, 0);
  for (int i = deg(a); i >= deg(b); --i) {
    const std::uint64_t c = mulmod(a[i], inv, p);
    q[i - deg(b)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= deg(b); ++j) {
      auto& slot = a[i - deg(b) + j];
      slot = (slot + p - mulmod(c, b[j], p)) % p;
    }
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline FpPoly mod(const FpPoly& a, const FpPoly& b, std::uint64_t p) { return divmod(a, b, p).second; }

inline FpPoly make_monic(FpPoly f, std::uint64_t p) {
  if (f.empty()) return f;
  const std::uint64_t inv = inverse(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
  return f;
}

inline FpPoly gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

inline FpPoly derivative(const FpPoly& f, std::uint64_t p) {
  FpPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulmod(f[i], i % p, p));
  trim(d);
  return d;
}

/// base^e mod m.
inline FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint64_t p) {
  FpPoly result{1};
  result = mod(result, m, p);
  base = mod(base, m, p);
  while (e) {
    if (e & 1) result = mod(mul(result, base, p), m, p);
    base = mod(mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

/// Distinct-degree factorization of a squarefree f: counts[d] = number of
/// irreducible factors of degree d.
inline std::map<unsigned, unsigned> distinct_degree_counts(FpPoly f, std::uint64_t p) {
  std::map<unsigned, unsigned> counts;
  f = make_monic(f, p);
  FpPoly x{0, 1};
  FpPoly h = mod(x, f, p);
  for (unsigned d = 1; deg(f) >= 2 * static_cast<int>(d); ++d) {
    h = powmod(h, p, f, p);
    FpPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      counts[d] += static_cast<unsigned>(deg(g)) / d;
      f = divmod(f, g, p).first;
      h = mod(h, f, p);
    }
  }
  if (deg(f) > 0) counts[static_cast<unsigned>(deg(f))] += 1;
  return counts;
}

/// Product of the distinct monic irreducible factors of f.
inline FpPoly radical(FpPoly f, std::uint64_t p) {
  f = make_monic(f, p);
  if (deg(f) <= 0) return FpPoly{1};
  FpPoly df = derivative(f, p);
  if (df.empty()) {
    // f(x) = g(x^p) = g(x)^p over F_p
    FpPoly root;
    for (std::size_t i = 0; i < f.size(); i += p) root.push_back(f[i]);
    return radical(root, p);
  }
  FpPoly c = gcd(f, df, p);
  FpPoly w = divmod(f, c, p).first;
  if (deg(c) <= 0) return make_monic(w, p);
  FpPoly r = radical(c, p);
  FpPoly common = gcd(w, r, p);
  return make_monic(divmod(mul(w, r, p), common, p).first, p);
}

}  // namespace fp

/// Dedekind's criterion: true iff p does not divide [O_K : Z[theta]].
inline bool dedekind_p_maximal(const ZPoly& f, std::uint64_t p) {
  const FpPoly fbar = fp::reduce(f, p);
  const FpPoly g = fp::radical(fbar, p);
  const FpPoly h = fp::divmod(fbar, g, p).first;
  auto lift = [](const FpPoly& a) {
    ZPoly out;
    for (auto c : a) out.push_back(BigInt(c));
    return out;
  };
  ZPoly gl = lift(g), hl = lift(h);
  ZPoly prod(gl.size() + hl.size() - 1, 0);
  for (std::size_t i = 0; i < gl.size(); ++i)
    for (std::size_t j = 0; j < hl.size(); ++j) prod[i + j] += gl[i] * hl[j];
  ZPoly F(std::max(prod.size(), f.size()), 0);
  for (std::size_t i = 0; i < F.size(); ++i) {
    const BigInt a = i < prod.size() ? prod[i] : BigInt(0);
    const BigInt b = i < f.size() ? f[i] : BigInt(0);
    F[i] = (a - b) / BigInt(p);
  }
  FpPoly t = fp::gcd(fp::reduce(F, p), g, p);
  t = fp::gcd(t, h, p);
  return fp::deg(t) <= 0;
}

/// Index [O_K : Z[theta]] when it can be shown to be 1; empty when some
/// p^2 | disc(f) fails Dedekind's criterion or disc(f) is too large to factor.
inline std::optional<BigInt> monogenic_index(const ZPoly& f, const BigInt& disc) {
  const BigInt ad = boost::multiprecision::abs(disc);
  if (ad >= (BigInt(1) << 63)) return std::nullopt;
  for (const auto& pp : factorize(ad.convert_to<std::uint64_t>()).factors) {
    if (pp.exponent < 2) continue;
    if (!dedekind_p_maximal(f, pp.prime)) return std::nullopt;
  }
  return BigInt(1);
}

namespace detail {

inline std::vector<std::int64_t> signed_divisors(std::uint64_t n) {
  std::vector<std::int64_t> divs{1};
  for (const auto& pp : factorize(n).factors) {
    const std::size_t base = divs.size();
    std::int64_t pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= static_cast<std::int64_t>(pp.prime);
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

// Exact division of monic-led integer polynomials; empty if not divisible.
inline std::optional<ZPoly> exact_quotient(ZPoly a, const ZPoly& b) {
  const int db = degree(b);
  const BigInt lead = b[db];
  ZPoly q(std::max(0, degree(a) - db + 1), 0);
  for (int i = degree(a); i >= db; --i) {
    if (a[i] == 0) continue;
    if (a[i] % lead != 0) return std::nullopt;
    const BigInt c = a[i] / lead;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (const auto& c : a)
    if (c != 0) return std::nullopt;
  return q;
}

// Kronecker's method for a factor of exact degree k.
inline std::optional<bool> has_factor_of_degree(const ZPoly& f, int k, std::size_t budget) {
  struct Sample {
    std::int64_t x;
    std::vector<std::int64_t> divisors;
  };
  std::vector<Sample> samples;
  for (std::int64_t x = -40; x <= 40; ++x) {
    const BigInt v = evaluate(f, BigInt(x));
    if (v == 0) return true;  // linear factor; f has degree >= 2 here
    const BigInt av = boost::multiprecision::abs(v);
    if (av >= (BigInt(1) << 62)) continue;
    samples.push_back({x, signed_divisors(av.convert_to<std::uint64_t>())});
  }
  if (samples.size() < static_cast<std::size_t>(k + 1)) return std::nullopt;
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.divisors.size() < b.divisors.size(); });
  samples.resize(static_cast<std::size_t>(k + 1));
  std::size_t combos = 1;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    combos *= samples[i].divisors.size() * (i == 0 ? 1 : 2);
    if (combos > budget) return std::nullopt;
  }
  std::vector<std::size_t> idx(samples.size(), 0);
  std::vector<int> sgn(samples.size(), 1);
  while (true) {
    // Lagrange interpolation of the candidate values
    QPoly g(static_cast<std::size_t>(k + 1), BigRational(0));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      QPoly basis{BigRational(1)};
      BigRational denom = 1;
      for (std::size_t j = 0; j < samples.size(); ++j) {
        if (j == i) continue;
        QPoly next(basis.size() + 1, BigRational(0));
        for (std::size_t t = 0; t < basis.size(); ++t) {
          next[t + 1] += basis[t];
          next[t] -= basis[t] * samples[j].x;
        }
        basis = std::move(next);
        denom *= samples[i].x - samples[j].x;
      }
      const BigRational yi = BigRational(sgn[i] * samples[i].divisors[idx[i]]) / denom;
      for (std::size_t t = 0; t < basis.size(); ++t) g[t] += basis[t] * yi;
    }
    bool integral = g[static_cast<std::size_t>(k)] == 1 || g[static_cast<std::size_t>(k)] == -1;
    ZPoly gi;
    for (std::size_t t = 0; integral && t < g.size(); ++t) {
      if (boost::multiprecision::denominator(g[t]) != 1) integral = false;
      gi.push_back(boost::multiprecision::numerator(g[t]));
    }
    if (integral && exact_quotient(f, gi)) return true;
    // advance odometer
    std::size_t pos = 0;
    while (pos < samples.size()) {
      if (++idx[pos] < samples[pos].divisors.size()) break;
      idx[pos] = 0;
      if (pos > 0 && sgn[pos] == 1) {
        sgn[pos] = -1;
        break;
      }
      sgn[pos] = 1;
      ++pos;
    }
    if (pos == samples.size()) return false;
  }
}

}  // namespace detail

/// Irreducibility of a monic integer polynomial over Q.
///
/// Factor-degree patterns modulo 40 good primes restrict the possible degrees
/// of a rational factor; any surviving degree is settled by Kronecker's
/// method.  Throws numerical_error when the search budget is exhausted.
inline bool is_irreducible(const ZPoly& f) {
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const BigInt disc = discriminant(f);
  if (disc == 0) return false;  // repeated factor
  std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
  unsigned good = 0;
  for (std::uint64_t p = 2; good < 40; ++p) {
    if (!is_prime(p) || disc % p == 0 || f[n] % p == 0) continue;
    ++good;
    const auto counts = fp::distinct_degree_counts(fp::reduce(f, p), p);
    std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
    sums[0] = true;
    for (const auto& [d, c] : counts)
      for (unsigned r = 0; r < c; ++r)
        for (int s = n; s >= static_cast<int>(d); --s)
          if (sums[s - d]) sums[s] = true;
    for (int k = 0; k <= n; ++k) possible[k] = possible[k] && sums[k];
  }
  for (int k = 1; 2 * k <= n; ++k) {
    if (!possible[k]) continue;
    const auto found = detail::has_factor_of_degree(f, k, 2'000'000);
    if (!found) throw numerical_error("is_irreducible: search budget exhausted for " + to_string(f));
    if (*found) return false;
  }
  return true;
}

/// Number of distinct real roots by Sturm's theorem (exact rationals).
inline unsigned real_root_count(const ZPoly& f) {
  auto to_q = [](const ZPoly& a) {
    QPoly out;
    for (int i = 0; i <= degree(a); ++i) out.push_back(BigRational(a[i]));
    return out;
  };
  auto qdeg = [](const QPoly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
      if (a[i] != 0) return i;
    return -1;
  };
  auto rem = [&](QPoly a, const QPoly& b) {
    const int db = qdeg(b);
    for (int i = qdeg(a); i >= db && i >= 0; i = qdeg(a)) {
      const BigRational c = a[i] / b[db];
      for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
      a[i] = 0;
    }
    a.resize(static_cast<std::size_t>(std::max(qdeg(a), 0) + 1));
    return a;
  };
  std::vector<QPoly> seq{to_q(f), to_q(derivative(f))};
  while (qdeg(seq.back()) > 0) {
    QPoly r = rem(seq[seq.size() - 2], seq.back());
    if (qdeg(r) < 0) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  auto changes = [&](bool at_plus) {
    int count = 0, last = 0;
    for (const auto& s : seq) {
      const int d = qdeg(s);
      if (d < 0) continue;
      int sign = s[d] > 0 ? 1 : -1;
      if (!at_plus && (d % 2)) sign = -sign;
      if (last != 0 && sign != last) ++count;
      last = sign;
    }
    return count;
  };
  return static_cast<unsigned>(changes(false) - changes(true));
}

}  // namespace zetafam
