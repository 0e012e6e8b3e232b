#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "zetafam/arith.hpp"
#include "zetafam/bernoulli.hpp"
#include "zetafam/units.hpp"

using namespace zetafam;

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker_symbol(-4, 5), 1);
  EXPECT_EQ(kronecker_symbol(-4, 2), 0);
  EXPECT_EQ(kronecker_symbol(-4, 3), -1);
  EXPECT_THROW(kronecker_symbol(3, 0), domain_error);
}

TEST(Kronecker, MatchesEulerCriterionOracle) {
  for (std::int64_t a = -200; a <= 200; ++a)
    for (std::int64_t n = 1; n <= 200; ++n) {
      ASSERT_EQ(kronecker_symbol(a, n), oracle::kronecker(a, n)) << a << " " << n;
      ASSERT_EQ(kronecker_symbol(a, -n), oracle::kronecker(a, -n)) << a << " " << -n;
    }
}

TEST(Kronecker, MultiplicativeInBothArguments) {
  for (std::int64_t a = -200; a <= 200; a += 3)
    for (std::int64_t b = -200; b <= 200; b += 7)
      for (std::int64_t n = -200; n <= 200; n += 5) {
        if (n == 0) continue;
        ASSERT_EQ(kronecker_symbol(a * b, n), kronecker_symbol(a, n) * kronecker_symbol(b, n)) << a << " " << b << " " << n;
      }
  for (std::int64_t a = -60; a <= 60; ++a)
    for (std::int64_t m = -60; m <= 60; ++m)
      for (std::int64_t n = -60; n <= 60; n += 11) {
        if (m == 0 || n == 0) continue;
        ASSERT_EQ(kronecker_symbol(a, m * n), kronecker_symbol(a, m) * kronecker_symbol(a, n)) << a << " " << m << " " << n;
      }
}

TEST(Kronecker, LegendreAtOddPrimes) {
  for (std::int64_t p : {3, 5, 7, 11, 13, 101, 997}) {
    for (std::int64_t a = 1; a < p; ++a) {
      bool square = false;
      for (std::int64_t x = 1; x < p; ++x) square |= (x * x) % p == a;
      EXPECT_EQ(kronecker_symbol(a, p), square ? 1 : -1);
    }
  }
}

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).factors.empty());
  const auto f12 = factorize(12);
  ASSERT_EQ(f12.factors.size(), 2u);
  EXPECT_EQ(f12.factors[0].prime, 2u);
  EXPECT_EQ(f12.factors[0].exponent, 2u);
  EXPECT_EQ(f12.factors[1].prime, 3u);
  EXPECT_EQ(f12.factors[1].exponent, 1u);
  const auto fm = factorize(2147483647ull);
  ASSERT_EQ(fm.factors.size(), 1u);
  EXPECT_EQ(fm.factors[0].prime, 2147483647ull);
  EXPECT_EQ(fm.factors[0].exponent, 1u);
}

TEST(Factorize, ReconstructsEveryIntegerUpToOneMillion) {
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    const auto f = factorize(n);
    std::uint64_t prev = 1, prod = 1;
    for (const auto& pp : f.factors) {
      ASSERT_GT(pp.prime, prev);
      ASSERT_GE(pp.exponent, 1u);
      prev = pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    ASSERT_EQ(prod, n);
  }
}

TEST(Factorize, LargeSemiprimesAndPowers) {
  const std::uint64_t p = 1'000'000'007ull, q = 998'244'353ull;
  const auto f = factorize(p * q);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].prime, q);
  EXPECT_EQ(f.factors[1].prime, p);
  const auto g = factorize(4611686014132420609ull);  // (2^31 - 1)^2
  ASSERT_EQ(g.factors.size(), 1u);
  EXPECT_EQ(g.factors[0].exponent, 2u);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = (rng() >> 1) | 1;
    EXPECT_EQ(factorize(n).product(), n);
  }
  EXPECT_THROW(factorize(0), domain_error);
  EXPECT_THROW(factorize(1ull << 63), domain_error);
}

TEST(PrimePowerSplit, Examples) {
  const auto a = prime_power_split(9);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->prime, 3u);
  EXPECT_EQ(a->exponent, 2u);
  EXPECT_FALSE(prime_power_split(12));
  const auto b = prime_power_split(125);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->prime, 5u);
  EXPECT_EQ(b->exponent, 3u);
}

TEST(FundamentalDiscriminant, MatchesOracle) {
  for (std::int64_t D = -5000; D <= 5000; ++D) ASSERT_EQ(is_fundamental_discriminant(D), oracle::fundamental(D)) << D;
}

TEST(FundamentalUnit, Examples) {
  const auto u2 = fundamental_unit(2);
  EXPECT_EQ(u2.x, 1);
  EXPECT_EQ(u2.y, 1);
  EXPECT_NEAR(u2.regulator(), 0.881373587019543, 1e-12);
  const auto u5 = fundamental_unit(5);
  EXPECT_EQ(u5.x, 1);
  EXPECT_EQ(u5.y, 1);
  EXPECT_NEAR(u5.regulator(), 0.481211825059603, 1e-12);
  const auto u94 = fundamental_unit(94);
  EXPECT_EQ(u94.x, 2143295);
  EXPECT_EQ(u94.y, 221064);
  EXPECT_EQ(u94.norm, 1);
  EXPECT_THROW(fundamental_unit(4), domain_error);
  EXPECT_THROW(fundamental_unit(1), domain_error);
}

TEST(FundamentalUnit, PellEquationAndBruteForceMinimality) {
  for (std::int64_t d = 2; d <= 500; ++d) {
    if (!is_squarefree(d)) continue;
    const auto u = fundamental_unit(d);
    const BigInt k = u.half_integral() ? 4 : 1;
    ASSERT_EQ(u.pell_value(), k * u.norm) << d;
    ASSERT_GT(u.regulator(), 0.0);
    const auto brute = oracle::pell_brute(d, 20000);
    if (brute.y != 0) {
      ASSERT_EQ(u.y, brute.y) << d;
      ASSERT_EQ(u.x, brute.x) << d;
      ASSERT_EQ(u.norm, brute.norm) << d;
    } else {
      ASSERT_GT(u.y, 20000) << d;
    }
  }
}

TEST(FundamentalUnit, HugeUnitsStayExact) {
  // d = 9949 has a fundamental unit with 35 digits
  const auto u = fundamental_unit(9949);
  EXPECT_EQ(u.pell_value(), BigInt(4) * u.norm);
  EXPECT_GT(u.x, BigInt(1) << 100);
  EXPECT_EQ(u.norm, -1);
  EXPECT_NEAR(u.regulator(), 81.23253097076374, 1e-9);
}

TEST(Bernoulli, Examples) {
  const auto B = bernoulli_numbers(6);
  ASSERT_EQ(B.size(), 6u);
  EXPECT_EQ(B[0], BigRational(1, 6));
  EXPECT_EQ(B[1], BigRational(-1, 30));
  EXPECT_EQ(B[5], BigRational(-691, 2730));
}

TEST(Bernoulli, MatchesAkiyamaTanigawa) {
  const auto B = bernoulli_numbers(kMaxBernoulliIndex);
  const auto ref = oracle::bernoulli_akiyama_tanigawa(2 * kMaxBernoulliIndex);
  for (unsigned k = 1; k <= kMaxBernoulliIndex; ++k) EXPECT_EQ(B[k - 1], ref[2 * k]) << k;
  EXPECT_THROW(bernoulli_numbers(kMaxBernoulliIndex + 1), domain_error);
  const auto& table = bernoulli_over_factorial();
  EXPECT_NEAR(table[1], 1.0 / 12.0, 1e-17);
  EXPECT_NEAR(table[2], -1.0 / 720.0, 1e-18);
}
