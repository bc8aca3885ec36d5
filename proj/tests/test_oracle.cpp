#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "strainlab/decompositions.hpp"
#include "strainlab/oracle.hpp"
#include "test_support.hpp"

namespace strainlab {
namespace {

TEST(RotationSampler, GridAngleCoversCircle) {
  RotationSampler s(2, 0, GridAngle{std::numbers::pi / 2});
  EXPECT_EQ(s.size(), 4u);
  std::size_t count = 0;
  while (auto r = s.next()) {
    EXPECT_LE(orthogonality_defect(*r), 1e-15);
    ++count;
  }
  EXPECT_EQ(count, 4u);
  s.reset();
  EXPECT_MATRIX_NEAR(*s.next(), SquareMatrix::identity(2), 0.0);
}

TEST(RotationSampler, UniformIsSeeded) {
  RotationSampler a(3, 99, UniformRandom{5});
  RotationSampler b(3, 99, UniformRandom{5});
  for (int i = 0; i < 5; ++i) {
    const auto ra = a.next();
    ASSERT_TRUE(ra.has_value());
    EXPECT_EQ(*ra, *b.next());
    EXPECT_NEAR(det(*ra), 1.0, 1e-13);
  }
  EXPECT_FALSE(a.next().has_value());
}

TEST(RotationSampler, AxisAngleGridStaysInBall) {
  RotationSampler s(3, 0, AxisAngleGrid{9});
  std::size_t count = 0;
  while (auto r = s.next()) {
    EXPECT_NEAR(det(*r), 1.0, 1e-13);
    ++count;
  }
  EXPECT_EQ(count, s.size());
  EXPECT_GT(count, 0u);
  EXPECT_LT(count, 9u * 9u * 9u);
}

TEST(RotationSampler, SchemeDimensionMismatch) {
  try {
    RotationSampler s(3, 0, GridAngle{0.1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedDimension);
  }
  EXPECT_THROW(RotationSampler(2, 0, AxisAngleGrid{4}), Error);
  EXPECT_THROW(RotationSampler(2, 0, GridAngle{0.0}), Error);
}

TEST(MinOverRotations, GridFindsPolarFactor) {
  const auto a = SquareMatrix::diagonal({2.0, 0.5});
  RotationSampler s(2, 0, GridAngle{1e-4});
  const auto r = min_over_rotations(a, RotationObjective::FrobeniusDistance, s);
  EXPECT_NEAR(r.value, std::sqrt(5.0) / 2, 1e-6);
  EXPECT_MATRIX_NEAR(r.argmin, SquareMatrix::identity(2), 1e-3);
  EXPECT_EQ(r.evaluated, s.size());

  RotationSampler s2(2, 0, GridAngle{1e-4});
  EXPECT_NEAR(min_over_rotations(a, RotationObjective::SymmetrizedFrobenius, s2).value, std::sqrt(5.0),
              1e-5);
}

TEST(MinOverRotations, RotatedInput) {
  const auto a = rotation2(1.0) * SquareMatrix::diagonal({3.0, 1.0});
  RotationSampler s(2, 0, GridAngle{1e-4});
  const auto r = min_over_rotations(a, RotationObjective::FrobeniusDistance, s);
  EXPECT_NEAR(r.value, 2.0, 1e-6);
  EXPECT_MATRIX_NEAR(r.argmin, rotation2(1.0), 2e-4);
}

TEST(IntrinsicDistance, EuclideanMatchesFrobenius) {
  PathOptimizerConfig cfg;
  cfg.nodes = 16;
  const auto r = intrinsic_distance_to_SOn(SquareMatrix::diagonal({2.0, 0.5}), EuclideanFrobenius{}, cfg);
  EXPECT_NEAR(r.value, std::sqrt(5.0) / 2, 0.005 * std::sqrt(5.0) / 2);
  EXPECT_EQ(r.path.nodes.size(), 17u);
}

TEST(IntrinsicDistance, LeftInvariantMatchesClosedForm) {
  const IsotropicMetric m(0, 1, -1);
  const auto r = intrinsic_distance_to_SOn(SquareMatrix::diagonal({2.0, 0.5}), LeftInvariant{m},
                                           PathOptimizerConfig{});
  const double exact = std::numbers::sqrt2 * std::log(2.0);
  EXPECT_NEAR(r.value, exact, 0.01 * exact);
}

TEST(IntrinsicDistance, RotationIsAlreadyThere) {
  PathOptimizerConfig cfg;
  cfg.nodes = 8;
  const auto r = intrinsic_distance_to_SOn(rotation2(0.6), EuclideanFrobenius{}, cfg);
  EXPECT_NEAR(r.value, 0.0, 1e-8);
}

TEST(PathOptimizerConfig, RejectsTooFewNodes) {
  PathOptimizerConfig cfg;
  cfg.nodes = 3;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(BiinvarianceCounterexample, Values) {
  const auto k0 = biinvariance_counterexample(2, 0);
  EXPECT_EQ(k0.conjugate, unit_upper_bidiagonal(2));
  EXPECT_EQ(k0.frobenius_to_I, 1.0);
  EXPECT_EQ(biinvariance_counterexample(2, 10).frobenius_to_I, std::ldexp(1.0, -10));
  EXPECT_NEAR(biinvariance_counterexample(3, 5).frobenius_to_I, std::numbers::sqrt2 / 32, 1e-17);
}

TEST(BiinvarianceCounterexample, MatchesExplicitConjugation) {
  const std::size_t n = 3;
  const int k = 4;
  std::vector<double> d(n), dinv(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = std::pow(std::ldexp(1.0, -static_cast<int>(i) - 1), k);
    dinv[i] = 1.0 / d[i];
  }
  const auto expect =
      SquareMatrix::diagonal(dinv) * unit_upper_bidiagonal(n) * SquareMatrix::diagonal(d);
  EXPECT_EQ(biinvariance_counterexample(n, k).conjugate, expect);
}

TEST(BiinvarianceCounterexample, Errors) {
  try {
    (void)biinvariance_counterexample(2, 61);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
  EXPECT_THROW((void)biinvariance_counterexample(2, -1), Error);
}

TEST(SegmentExits, Examples) {
  EXPECT_TRUE(segment_exits_glnplus(SquareMatrix::identity(2), SquareMatrix::diagonal({-1.0, -1.0})));
  EXPECT_FALSE(segment_exits_glnplus(SquareMatrix::identity(2), SquareMatrix::diagonal({2.0, 3.0})));
  const auto t = segment_exit_point(SquareMatrix::identity(2), SquareMatrix::diagonal({-1.0, 1.0}));
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, 0.5, 1e-9);
  EXPECT_FALSE(segment_exit_point(SquareMatrix::identity(2), rotation2(1.0)).has_value());
}

}  // namespace
}  // namespace strainlab
