#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "zetafam/classdata.hpp"

using namespace zetafam;

TEST(ClassNumberImaginary, Examples) {
  EXPECT_EQ(class_number_imaginary(-4), 1u);
  EXPECT_EQ(class_number_imaginary(-23), 3u);
  EXPECT_EQ(class_number_imaginary(-3), 1u);
  EXPECT_EQ(class_number_imaginary(-1000003), 105u);
  EXPECT_EQ(class_number_imaginary(-1005716), 910u);
  EXPECT_THROW(class_number_imaginary(-12), domain_error);
  EXPECT_THROW(class_number_imaginary(5), domain_error);
}

TEST(ClassNumberImaginary, HeegnerNumbersAreExactlyTheClassNumberOneFields) {
  std::vector<std::int64_t> one;
  for (std::int64_t D = -200; D < 0; ++D)
    if (is_fundamental_discriminant(D) && class_number_imaginary(D) == 1) one.push_back(D);
  EXPECT_EQ(one, (std::vector<std::int64_t>{-163, -67, -43, -19, -11, -8, -7, -4, -3}));
}

TEST(ClassNumberImaginary, AgreesWithAnalyticFormulaBelowTenThousand) {
  unsigned mismatches = 0, checked = 0;
  for (std::int64_t D = -9999; D < 0; ++D) {
    if (!oracle::fundamental(D)) continue;
    const auto cd = class_data_imaginary(D);
    const double analytic = cd.w * std::sqrt(static_cast<double>(-D)) * dirichlet_L(1.0, D).real() / (2 * std::numbers::pi);
    if (std::llround(analytic) != static_cast<long long>(cd.h)) ++mismatches;
    ++checked;
  }
  EXPECT_EQ(mismatches, 0u);
  EXPECT_EQ(checked, 3043u);
}

TEST(ClassDataReal, Examples) {
  const auto c5 = class_data_real(5);
  EXPECT_EQ(c5.h, 1u);
  EXPECT_NEAR(c5.R, 0.481211825059603, 1e-12);
  EXPECT_EQ(c5.w, 2u);
  const auto c8 = class_data_real(8);
  EXPECT_EQ(c8.h, 1u);
  EXPECT_NEAR(c8.R, 0.881373587019543, 1e-12);
  EXPECT_EQ(class_data_real(229).h, 3u);
  EXPECT_THROW(class_data_real(-4), domain_error);
  EXPECT_THROW(class_data_real(9), domain_error);
}

TEST(ClassDataReal, NarrowClassNumberRelation) {
  // h+ = h when the fundamental unit has norm -1, else 2h
  const std::vector<std::int64_t> Ds{5, 8, 12, 13, 40, 60, 145, 229, 316, 321};
  for (auto D : Ds) {
    const auto cd = class_data_real(D);
    const std::int64_t d = D % 4 == 0 ? D / 4 : D;
    const int norm = fundamental_unit(d).norm;
    const unsigned narrow = oracle::narrow_class_number(D);
    EXPECT_EQ(narrow, norm == -1 ? cd.h : 2 * cd.h) << D;
  }
}

TEST(ClassDataReal, AnalyticValueNearIntegerBelowTenThousand) {
  for (std::int64_t D = 5; D < 10000; ++D) {
    if (!oracle::fundamental(D)) continue;
    const auto raw = real_class_number_unrounded(D);
    ASSERT_LT(std::abs(raw.unrounded - std::round(raw.unrounded)), 1e-3) << D;
    ASSERT_GE(std::round(raw.unrounded), 1.0);
  }
}

TEST(ClassDataReal, FormCountingCrossCheckForSmallDiscriminants) {
  for (std::int64_t D = 5; D < 600; ++D) {
    if (!oracle::fundamental(D)) continue;
    const auto cd = class_data_real(D);
    const std::int64_t d = D % 4 == 0 ? D / 4 : D;
    const unsigned narrow = oracle::narrow_class_number(D);
    EXPECT_EQ(narrow, fundamental_unit(d).norm == -1 ? cd.h : 2 * cd.h) << D;
  }
}

TEST(RootsOfUnity, Rules) {
  EXPECT_EQ(roots_of_unity(FieldDescriptor::quadratic(-1)), 4u);
  EXPECT_EQ(roots_of_unity(FieldDescriptor::quadratic(-3)), 6u);
  EXPECT_EQ(roots_of_unity(FieldDescriptor::quadratic(-5)), 2u);
  EXPECT_EQ(roots_of_unity(FieldDescriptor::quadratic(5)), 2u);
  EXPECT_EQ(roots_of_unity(FieldDescriptor::cyclotomic(5)), 10u);
  EXPECT_EQ(roots_of_unity(FieldDescriptor::cyclotomic(12)), 12u);
  for (unsigned n = 3; n < 300; ++n) {
    if (n % 4 == 2) continue;
    const auto F = FieldDescriptor::cyclotomic(n);
    EXPECT_TRUE(roots_of_unity_plausible(roots_of_unity(F), field_invariants(F).degree)) << n;
  }
  EXPECT_FALSE(roots_of_unity_plausible(20, 2));
  EXPECT_FALSE(roots_of_unity_plausible(3, 1));
}

TEST(Residue, Examples) {
  const auto Qi = FieldDescriptor::quadratic(-1);
  const auto r = residue_kappa(field_invariants(Qi), class_data(Qi));
  EXPECT_NEAR(r.kappa, std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(r.log_kappa, std::log(std::numbers::pi / 4), 1e-15);
  const auto F5 = FieldDescriptor::quadratic(5);
  EXPECT_NEAR(residue_kappa(field_invariants(F5), class_data(F5)).kappa, 0.4304089409640040389, 1e-12);
}

TEST(Residue, RecomputesBitIdentically) {
  for (std::int64_t m : {-1ll, -3ll, -5ll, 2ll, 3ll, 5ll, 229ll, -1000003ll}) {
    const auto F = FieldDescriptor::quadratic(m);
    const auto r = residue_kappa(field_invariants(F), class_data(F));
    const auto again = ResidueValue::from_components(r.components);
    EXPECT_EQ(r.kappa, again.kappa);
    EXPECT_EQ(r.log_kappa, again.log_kappa);
  }
  // very large discriminants take the logarithmic route
  FieldInvariants inv = field_invariants(FieldDescriptor::cyclotomic(997));
  ClassData cd{1, 1.0, 1994, ClassSource::ingested};
  const auto r = residue_kappa(inv, cd);
  EXPECT_TRUE(std::isfinite(r.log_kappa));
  EXPECT_EQ(r.kappa, ResidueValue::from_components(r.components).kappa);
}

TEST(Residue, EqualsLOneForEveryQuadraticField) {
  for (std::int64_t D = -3000; D <= 3000; ++D) {
    if (!oracle::fundamental(D)) continue;
    const auto F = FieldDescriptor::quadratic_from_discriminant(D);
    const double kappa = residue_kappa(field_invariants(F), class_data(F)).kappa;
    ASSERT_NEAR(kappa, dirichlet_L(1.0, D).real(), 1e-11 * kappa) << D;
  }
}

TEST(BrauerSiegelRatio, Examples) {
  const auto Qi = FieldDescriptor::quadratic(-1);
  EXPECT_EQ(brauer_siegel_ratio(field_invariants(Qi), class_data(Qi)), 0.0);
  const auto F5 = FieldDescriptor::quadratic(5);
  EXPECT_NEAR(brauer_siegel_ratio(field_invariants(F5), class_data(F5)), -0.9089480438195228, 1e-12);
  // h(-1005716) = 910
  const auto big = FieldDescriptor::quadratic_from_discriminant(-1005716);
  EXPECT_NEAR(brauer_siegel_ratio(field_invariants(big), class_data(big)),
              std::log(910.0) / (0.5 * std::log(1005716.0)), 1e-14);
  EXPECT_NEAR(brauer_siegel_ratio(field_invariants(big), class_data(big)), 0.9845, 2e-3);
  EXPECT_THROW(brauer_siegel_ratio(field_invariants(FieldDescriptor::rationals()), ClassData{}), domain_error);
}

TEST(Validation, IngestedQuadraticData) {
  const auto inv = field_invariants(FieldDescriptor::quadratic(-23));
  EXPECT_EQ(validate_class_data(inv, {3, 1.0, 2, ClassSource::ingested}).status, ValidationStatus::validated);
  EXPECT_EQ(validate_class_data(inv, {2, 1.0, 2, ClassSource::ingested}).status, ValidationStatus::flagged);
  EXPECT_EQ(validate_class_data(inv, {3, 1.0, 12, ClassSource::ingested}).status, ValidationStatus::flagged);
  const auto r5 = field_invariants(FieldDescriptor::quadratic(5));
  EXPECT_EQ(validate_class_data(r5, {1, 0.4812, 2, ClassSource::ingested}).status, ValidationStatus::validated);
  EXPECT_EQ(validate_class_data(r5, {1, 0.49, 2, ClassSource::ingested}).status, ValidationStatus::flagged);
  const auto cubic = field_invariants(FieldDescriptor::monogenic({BigInt(1), BigInt(-2), BigInt(-1), BigInt(1)}));
  EXPECT_EQ(validate_class_data(cubic, {1, 0.525454682, 2, ClassSource::ingested}).status, ValidationStatus::unverifiable);
}
