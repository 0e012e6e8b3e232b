#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "zetafam/family.hpp"

using namespace zetafam;

namespace {

std::vector<std::int64_t> discriminants(const std::vector<FieldDescriptor>& fields) {
  std::vector<std::int64_t> out;
  for (const auto& F : fields) out.push_back(field_invariants(F).discriminant.convert_to<std::int64_t>());
  return out;
}

FamilySpec imaginary(std::size_t N, std::uint64_t lo = 3, std::uint64_t hi = 1ull << 40) {
  return {ImaginaryQuadratic{lo, hi}, N};
}

TVInvariants random_invariants(std::mt19937_64& rng, std::uint64_t X, std::size_t support) {
  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 2; q <= X; ++q)
    if (prime_power_split(q)) qs.push_back(q);
  std::shuffle(qs.begin(), qs.end(), rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::map<std::uint64_t, double> phi;
  for (std::size_t i = 0; i < std::min(support, qs.size()); ++i) phi[qs[i]] = u(rng);
  return TVInvariants::synthetic(phi, u(rng), u(rng));
}

double richardson_log_derivative(const TVInvariants& inv, double s) {
  auto f = [&](double t) { return limit_zeta(inv, t).log_value.real(); };
  auto d = [&](double h) { return (f(s + h) - f(s - h)) / (2 * h); };
  const double h = 1e-5;
  return (4 * d(h / 2) - d(h)) / 3;
}

}  // namespace

TEST(Enumerate, ImaginaryQuadraticPrefix) {
  EXPECT_EQ(discriminants(enumerate(imaginary(5))), (std::vector<std::int64_t>{-3, -4, -7, -8, -11}));
}

TEST(Enumerate, RealQuadraticPrefix) {
  EXPECT_EQ(discriminants(enumerate({RealQuadratic{}, 6})), (std::vector<std::int64_t>{5, 8, 12, 13, 17, 21}));
}

TEST(Enumerate, SplitConstrainedMatchesSieve) {
  const auto fields = enumerate({SplitConstrained{true, {2, 3}}, 4});
  std::vector<std::int64_t> expect;
  for (std::int64_t D = -3; expect.size() < 4; --D)
    if (oracle::fundamental(D) && oracle::kronecker(D, 2) == 1 && oracle::kronecker(D, 3) == 1) expect.push_back(D);
  EXPECT_EQ(discriminants(fields), expect);
  EXPECT_EQ(expect.front(), -23);
  EXPECT_THROW(enumerate({SplitConstrained{true, {4}}, 1}), validation_error);
}

TEST(Enumerate, EmptyFamiliesAndSynthetic) {
  EXPECT_THROW(enumerate(imaginary(3, 1, 2)), empty_family_error);
  EXPECT_THROW(enumerate({SplitConstrained{true, {2}, 3, 6}}), empty_family_error);
  EXPECT_TRUE(enumerate({Synthetic{TVInvariants::synthetic({{2, 0.5}})}, 1}).empty());
  EXPECT_THROW(enumerate(imaginary(0)), validation_error);
}

TEST(Enumerate, DistinctDiscriminantsAndMonotoneGenus) {
  for (const FamilySpec& spec : {imaginary(400), FamilySpec{RealQuadratic{}, 400}, imaginary(200, 1'000'000, 2'000'000)}) {
    const auto fields = enumerate(spec);
    ASSERT_EQ(fields.size(), spec.N);
    std::set<std::int64_t> seen;
    double g = 0;
    for (const auto& F : fields) {
      const auto inv = field_invariants(F);
      ASSERT_TRUE(seen.insert(inv.discriminant.convert_to<std::int64_t>()).second);
      ASSERT_GE(inv.genus, g);
      g = inv.genus;
    }
  }
}

TEST(Enumerate, CyclotomicPrimePowers) {
  const auto fields = enumerate({CyclotomicPrimePower{3, 1}, 3});
  ASSERT_EQ(fields.size(), 3u);
  EXPECT_EQ(fields[2].as<Cyclotomic>()->n, 27u);
  EXPECT_EQ(enumerate({CyclotomicPrimePower{2, 1}, 1})[0].as<Cyclotomic>()->n, 4u);
}

TEST(TVInvariants, SingleFieldQi) {
  const auto inv = estimate_tv_invariants(imaginary(1, 4, 4), 10);
  EXPECT_EQ(inv.provenance, Provenance::estimated);
  EXPECT_NEAR(inv.phi_C, 1 / std::numbers::ln2, 1e-15);
  EXPECT_EQ(inv.phi_R, 0.0);
  EXPECT_NEAR(inv.phi.at(5), 2 / std::numbers::ln2, 1e-15);
  EXPECT_NEAR(inv.phi.at(2), 1 / std::numbers::ln2, 1e-15);
  EXPECT_EQ(inv.phi.at(3), 0.0);
  EXPECT_NEAR(inv.phi.at(9), 1 / std::numbers::ln2, 1e-15);
  EXPECT_EQ(inv.history.size(), 1u);
}

TEST(TVInvariants, QuadraticEstimatesDominatedByDegreeOverGenus) {
  const auto inv = estimate_tv_invariants(imaginary(300), 200);
  ASSERT_EQ(inv.history.size(), 300u);
  for (const auto& s : inv.history)
    for (const auto& [q, v] : s.phi) ASSERT_LE(v, 2 / s.genus + 1e-15) << s.field_id << " " << q;
  const double gN = inv.history.back().genus;
  for (const auto& [q, v] : inv.phi) EXPECT_LE(v, 2 / gN + 1e-15);
}

TEST(TVInvariants, SyntheticPassThrough) {
  const auto syn = TVInvariants::synthetic({{2, 0.5}});
  const auto inv = estimate_tv_invariants({Synthetic{syn}, 1}, 1000);
  EXPECT_EQ(inv.phi, syn.phi);
  EXPECT_EQ(inv.provenance, Provenance::synthetic);
  EXPECT_THROW(TVInvariants::synthetic({{6, 0.5}}), validation_error);
  EXPECT_THROW(TVInvariants::synthetic({{2, -0.5}}), validation_error);
}

TEST(LimitZeta, Examples) {
  const auto zero = TVInvariants::synthetic({});
  for (double s : {0.5, 1.0, 2.0}) EXPECT_EQ(limit_zeta(zero, s).value, Cplx(1.0));
  const auto half = TVInvariants::synthetic({{2, 0.5}});
  EXPECT_NEAR(limit_zeta(half, 1.0).value.real(), std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(limit_zeta(half, 0.5).value.real(), 1.8477590650225735, 1e-14);
  EXPECT_EQ(limit_zeta(half, 1.0).largest_q, 2u);
  EXPECT_THROW(limit_zeta(half, 0.49), domain_error);
}

TEST(EkLimit, Examples) {
  EXPECT_EQ(ek_limit(TVInvariants::synthetic({})), 0.0);
  EXPECT_NEAR(ek_limit(TVInvariants::synthetic({{2, 0.1}})), -0.1 * std::numbers::ln2, 1e-16);
  EXPECT_NEAR(ek_limit(TVInvariants::synthetic({{2, 1.0}, {3, 1.0}})), -(std::numbers::ln2 + std::log(3.0) / 2), 1e-15);
  EXPECT_NEAR(ek_limit(TVInvariants::synthetic({{2, 1.0}, {3, 1.0}})), -1.242453, 1e-6);
}

TEST(TvzRhs, Examples) {
  EXPECT_EQ(tvz_rhs(TVInvariants::synthetic({})).value, 1.0);
  EXPECT_NEAR(tvz_rhs(TVInvariants::synthetic({}, 0.0, 1 / std::numbers::ln2)).value, -1.651496129472319, 1e-14);
  EXPECT_NEAR(tvz_rhs(TVInvariants::synthetic({{2, 1.0}})).value, 1 + std::numbers::ln2, 1e-15);
  EXPECT_EQ(tvz_rhs(TVInvariants::synthetic({{2, 1.0}})).tail_bound, 0.0);
  EXPECT_FALSE(tvz_rhs(estimate_tv_invariants(imaginary(10), 50)).tail_bound.has_value());
}

TEST(LimitZeta, DerivativeIdentityOnRandomInvariants) {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 100; ++i) {
    const auto inv = random_invariants(rng, 10000, 1 + rng() % 50);
    EXPECT_NEAR(richardson_log_derivative(inv, 1.0), ek_limit(inv), 1e-8);
  }
}

TEST(LimitZeta, TvzEqualsLogLimitZetaAtOne) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto inv = random_invariants(rng, 10000, 1 + rng() % 80);
    const double lhs = tvz_rhs(inv).value - 1 + inv.phi_R * std::numbers::ln2 + inv.phi_C * std::log(2 * std::numbers::pi);
    EXPECT_NEAR(lhs, limit_zeta(inv, 1.0).log_value.real(), 1e-10);
  }
}

TEST(Theorem1, SingleFieldQiAtTwo) {
  const auto t = run_theorem1(imaginary(1, 4, 4), 2.0, {10, 1});
  ASSERT_EQ(t.rows().size(), 1u);
  EXPECT_NEAR(*t.rows()[0].measured, std::log(1.506703009922985030887) / std::numbers::ln2, 1e-11);
  EXPECT_NEAR(*t.rows()[0].measured, 0.5914, 1e-3);
  EXPECT_THROW(run_theorem1(imaginary(1), 0.4), domain_error);
  EXPECT_THROW(run_theorem1(imaginary(1), 1.0), domain_error);
}

TEST(Theorem1, SyntheticIsPredictionOnly) {
  const auto t = run_theorem1({Synthetic{TVInvariants::synthetic({{2, 0.5}})}, 1}, 1.5);
  ASSERT_EQ(t.rows().size(), 1u);
  EXPECT_FALSE(t.rows()[0].measured.has_value());
  EXPECT_NEAR(*t.rows()[0].prediction, -0.5 * std::log(1 - std::pow(2.0, -1.5)), 1e-15);
  EXPECT_TRUE(t.measured_values().empty());
}

TEST(Theorem1, ComplexPointTabulatesModulus) {
  const auto t = run_theorem1(imaginary(5), Cplx(1.5, 3.0), {50, 1});
  for (const auto& r : t.rows()) {
    EXPECT_TRUE(r.has_flag("modulus"));
    EXPECT_TRUE(r.measured.has_value());
  }
}

TEST(Theorem1, PrefixTableContract) {
  const auto t = run_theorem1(imaginary(60), 1.5, {100, 2});
  ASSERT_EQ(t.rows().size(), 60u);
  EXPECT_TRUE(t.sorted_by_genus());
  EXPECT_EQ(t.metadata.failed, 0u);
  for (const auto& r : t.rows()) {
    ASSERT_TRUE(r.measured && r.prediction);
    EXPECT_EQ(*r.residual(), *r.measured - *r.prediction);
  }
}

TEST(Theorem2, ImaginaryPrefix) {
  const auto t = run_theorem2(imaginary(100), {100, 2});
  EXPECT_EQ(t.rows().size(), 100u);
  EXPECT_EQ(t.metadata.failed, 0u);
  EXPECT_EQ(t.metadata.excluded, 0u);
  for (const auto& r : t.rows()) EXPECT_TRUE(r.measured && std::isfinite(*r.measured)) << r.field_id;
  const auto syn = run_theorem2({Synthetic{TVInvariants::synthetic({})}, 1});
  EXPECT_EQ(*syn.rows()[0].prediction, 0.0);
}

TEST(Theorem2, NonQuadraticRowsFailWithoutStoppingTheRun) {
  IngestedFamily fam{{FieldDescriptor::quadratic(-1), FieldDescriptor::cyclotomic(5)}};
  const auto t = run_theorem2({fam, 2}, {20, 1});
  EXPECT_EQ(t.metadata.failed, 1u);
  EXPECT_EQ(t.measured_values().size(), 1u);
}

TEST(EulerKroneckerDriver, SyntheticAndPrefix) {
  const auto syn = run_ek({Synthetic{TVInvariants::synthetic({{2, 0.1}})}, 1});
  EXPECT_NEAR(*syn.rows()[0].prediction, -0.0693147, 1e-7);
  EXPECT_TRUE(syn.measured_values().empty());
  const auto t = run_ek(imaginary(40), {50, 2});
  EXPECT_EQ(t.metadata.failed, 0u);
  EXPECT_EQ(t.measured_values().size(), 40u);
  const auto q = run_ek({IngestedFamily{{FieldDescriptor::rationals(), FieldDescriptor::quadratic(-1)}}, 2}, {20, 1});
  EXPECT_EQ(q.metadata.excluded, 1u);
  EXPECT_TRUE(q.rows()[0].has_flag("degenerate"));
}

TEST(BrauerSiegelDriver, ResidueIdentityHoldsPerRow) {
  for (const FamilySpec& spec : {imaginary(150), FamilySpec{RealQuadratic{}, 150}}) {
    const auto t = run_brauer_siegel(spec, {50, 2});
    EXPECT_EQ(t.metadata.failed, 0u);
    for (const auto& r : t.rows()) {
      EXPECT_LE(std::abs(r.aux.at("identity_residual")), 1e-10) << r.field_id;
      EXPECT_FALSE(r.has_flag("identity_violation"));
    }
  }
  const auto zero = run_brauer_siegel({Synthetic{TVInvariants::synthetic({})}, 1});
  EXPECT_EQ(*zero.rows()[0].prediction, 1.0);
  EXPECT_EQ(zero.metadata.notes.back(), "log zeta_fam(1) = 0");
}

TEST(Drivers, ParallelMergeIsDeterministic) {
  const auto a = run_theorem1(imaginary(80), 1.5, {100, 1});
  const auto b = run_theorem1(imaginary(80), 1.5, {100, 4});
  EXPECT_EQ(a.to_csv(), b.to_csv());
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(Table, CsvAndJsonMirrorEachOther) {
  const auto t = run_ek(imaginary(10), {30, 1});
  const std::string csv = t.to_csv();
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "field_id,abs_disc,genus,measured,prediction,residual,flags");
  const auto j = t.to_json();
  std::size_t n = 0;
  while (std::getline(is, line)) {
    const auto& row = j["rows"][n];
    EXPECT_EQ(line.substr(0, line.find(',')), row["field_id"].get<std::string>());
    EXPECT_NE(line.find(format_double(row["measured"].get<double>())), std::string::npos);
    ++n;
  }
  EXPECT_EQ(n, j["rows"].size());
  EXPECT_EQ(j["metadata"]["theorem"], "ek");
  EXPECT_EQ(format_double(0.1 + 0.2), "0.3");
  EXPECT_EQ(format_double(std::nan("")), "");
}

TEST(Drivers, IngestedRecordsWithoutRegulatorAreExcluded) {
  Ingested full;
  full.label = "3.3.49.1";
  full.degree = 3;
  full.discriminant = 49;
  full.signature = {3, 0};
  full.poly = ZPoly{1, -2, -1, 1};
  full.class_number = 1;
  full.regulator = 0.5254546821225724;
  full.roots_of_unity = 2;
  Ingested partial = full;
  partial.label = "3.3.148.1";
  partial.discriminant = 148;
  partial.poly = ZPoly{1, -3, -1, 1};
  partial.regulator.reset();
  FamilySpec spec;
  spec.generator = IngestedFamily{{FieldDescriptor::ingested(full), FieldDescriptor::ingested(partial)}};
  spec.N = 2;
  const auto t = run_brauer_siegel(spec);
  EXPECT_EQ(t.metadata.failed, 0u);
  EXPECT_EQ(t.metadata.excluded, 1u);
  ASSERT_EQ(t.rows().size(), 2u);
  const auto& first = t.rows()[0];
  EXPECT_EQ(first.field_id, FieldDescriptor::ingested(full).id());
  EXPECT_NEAR(*first.measured, std::log(0.5254546821225724) / (0.5 * std::log(49.0)), 1e-12);
  EXPECT_TRUE(first.has_flag("ingested"));
  EXPECT_TRUE(t.rows()[1].has_flag("missing_class_data"));
  EXPECT_FALSE(t.rows()[1].measured);
}
