#pragma once

// Exact integer primitives: Kronecker symbol, factorization, prime powers,
// sieves and a handful of multiplicative helpers.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zetafam/errors.hpp"

namespace zetafam {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Natural logarithm of |x| for an arbitrary-size integer, x != 0.
inline double log_abs(const BigInt& x) {
  if (x == 0) throw domain_error("log_abs: zero");
  BigInt ax = boost::multiprecision::abs(x);
  const std::size_t bits = boost::multiprecision::msb(ax) + 1;
  if (bits <= 60) return std::log(ax.convert_to<double>());
  // keep the top 60 bits as mantissa, account for the rest in the exponent
  const std::size_t shift = bits - 60;
  BigInt top = ax >> shift;
  return std::log(top.convert_to<double>()) +
         static_cast<double>(shift) * std::log(2.0);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Kronecker symbol (a/n).
///
/// Convention for n < 0: (a/n) = (a/-1)(a/|n|) with (a/-1) = sign(a), where
/// sign(0) = 0.  With this choice (. / n) is completely multiplicative in its
/// first argument for every n != 0, including (0/-1) = 0.  For |n| = 1 and
/// a != 0 the usual values (a/1) = 1, (a/-1) = sign(a) are returned.
inline int kronecker_symbol(std::int64_t a, std::int64_t n) {
  if (n == 0) throw domain_error("kronecker_symbol: n = 0");
  int result = 1;
  std::uint64_t m;
  if (n < 0) {
    if (a == 0) return 0;
    if (a < 0) result = -result;
    m = static_cast<std::uint64_t>(-(n + 1)) + 1;
  } else {
    m = static_cast<std::uint64_t>(n);
  }
  if (m == 1) return result;
  if ((m & 1) == 0) {
    if ((a & 1) == 0) return 0;
    const int v = std::countr_zero(m);
    m >>= v;
    const std::int64_t r8 = ((a % 8) + 8) % 8;
    if ((v & 1) && (r8 == 3 || r8 == 5)) result = -result;
    if (m == 1) return result;
  }
  // Jacobi symbol (a mod m / m) for odd m > 1
  std::uint64_t x = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(m)) +
                                                 static_cast<std::int64_t>(m)) %
                                                static_cast<std::int64_t>(m));
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::uint64_t r = m & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if ((x & 3) == 3 && (m & 3) == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  std::uint64_t product() const {
    std::uint64_t v = 1;
    for (const auto& f : factors)
      for (unsigned e = 0; e < f.exponent; ++e) v *= f.prime;
    return v;
  }
};

namespace detail {

// Brent's variant of Pollard rho; n odd composite.
inline std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace detail

/// Trial division to 10^6, then Miller-Rabin + Pollard rho.
inline Factorization factorize(std::uint64_t n) {
  if (n == 0 || n >= (1ull << 63)) throw domain_error("factorize: n outside [1, 2^63)");
  Factorization out;
  out.value = n;
  std::uint64_t rest = n;
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e) out.factors.push_back({p, e});
  };
  take(2);
  for (std::uint64_t p = 3; p <= 1000000 && p * p <= rest; p += 2) take(p);
  if (rest > 1) {
    std::vector<std::uint64_t> primes;
    detail::split_large(rest, primes);
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
      std::size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      out.factors.push_back({primes[i], static_cast<unsigned>(j - i)});
      i = j;
    }
  }
  return out;
}

/// (p, f) with p^f = q when q is a prime power.
inline std::optional<PrimePower> prime_power_split(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto f = factorize(q);
  if (f.factors.size() != 1) return std::nullopt;
  return f.factors.front();
}

inline bool is_squarefree(std::int64_t m) {
  if (m == 0) return false;
  const std::uint64_t a = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
  if (a == 1) return true;
  for (const auto& f : factorize(a).factors)
    if (f.exponent > 1) return false;
  return true;
}

/// D = 1 mod 4 squarefree, or D = 4m with m = 2, 3 mod 4 squarefree; D != 1.
inline bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 0 || D == 1) return false;
  const std::int64_t r = ((D % 4) + 4) % 4;
  if (r == 1) return is_squarefree(D);
  if (r != 0) return false;
  const std::int64_t m = D / 4;
  const std::int64_t rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (const auto& f : factorize(n).factors) result = result / f.prime * (f.prime - 1);
  return result;
}

/// Multiplicative order of a modulo n (gcd(a, n) = 1, n >= 1).
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 1;
  if (std::gcd(a % n, n) != 1) throw domain_error("multiplicative_order: not a unit");
  std::uint64_t order = euler_phi(n);
  for (const auto& f : factorize(order).factors) {
    for (unsigned e = 0; e < f.exponent; ++e) {
      if (powmod(a, order / f.prime, n) == 1)
        order /= f.prime;
      else
        break;
    }
  }
  return order;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

/// Smallest-prime-factor table on [0, limit].
class SpfSieve {
 public:
  explicit SpfSieve(std::uint32_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0) {
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (spf_[i]) continue;
      for (std::uint64_t j = i; j <= limit; j += i)
        if (!spf_[j]) spf_[j] = i;
    }
  }
  std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
  std::uint32_t operator[](std::uint32_t n) const { return spf_[n]; }

 private:
  std::vector<std::uint32_t> spf_;
};

/// Shared sieve covering at least `limit`; grown on demand, never mutated once published.
inline std::shared_ptr<const SpfSieve> shared_spf_sieve(std::uint32_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const SpfSieve> current;
  std::lock_guard lock(mutex);
  if (!current || current->limit() < limit) {
    const std::uint32_t size = std::max<std::uint32_t>(limit, current ? current->limit() * 2 : 1u << 16);
    current = std::make_shared<const SpfSieve>(size);
  }
  return current;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace zetafam
