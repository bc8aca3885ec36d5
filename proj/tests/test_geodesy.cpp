#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "strainlab/decompositions.hpp"
#include "strainlab/geodesy.hpp"
#include "strainlab/random.hpp"
#include "test_support.hpp"

namespace strainlab {
namespace {

const IsotropicMetric kUnit(0, 1, -1);

TEST(GeodesicEval, SymmetricVelocityIsPlainExponential) {
  const auto x = SquareMatrix::diagonal({std::log(2.0), -std::log(2.0)});
  const GeodesicSpec spec{SquareMatrix::identity(2), x, kUnit};
  EXPECT_MATRIX_NEAR(geodesic_eval(spec, 1.0), SquareMatrix::diagonal({2.0, 0.5}), 1e-14);
  EXPECT_MATRIX_NEAR(geodesic_eval(spec, 0.0), SquareMatrix::identity(2), 0.0);
}

TEST(GeodesicEval, SkewVelocityIsOneParameterSubgroup) {
  const auto w = SquareMatrix::from_rows({{0, -0.3}, {0.3, 0}});
  const auto a = SquareMatrix::diagonal({2.0, 3.0});
  const GeodesicSpec spec{a, w, IsotropicMetric(1, 2, -1)};
  EXPECT_MATRIX_NEAR(geodesic_eval(spec, 2.0), a * mat_exp(2.0 * w), 1e-13);
}

TEST(GeodesicOdeRhs, Example) {
  EXPECT_MATRIX_NEAR(geodesic_ode_rhs(kUnit, SquareMatrix::from_rows({{1, 1}, {0, 1}})),
                     SquareMatrix::from_rows({{-1, 0}, {0, 1}}), 0.0);
  EXPECT_MATRIX_NEAR(geodesic_ode_rhs(kUnit, SquareMatrix::diagonal({1, 2})), SquareMatrix::zeros(2),
                     0.0);
}

TEST(GeodesicIntegrate, MatchesClosedForm) {
  Rng rng(17);
  for (int t = 0; t < 6; ++t) {
    const GeodesicSpec spec{random_gl_plus(2 + t % 2, rng, 10.0), random_gaussian(2 + t % 2, rng, 0.5),
                            IsotropicMetric(0.5, 1.0, -0.5 - t * 0.3)};
    const auto exact = geodesic_eval(spec, 1.0);
    EXPECT_LE(relative_error(geodesic_integrate(spec, 1.0, 2000), exact), 1e-8);
  }
}

TEST(OdeSolutionX, FiniteDifferenceResidual) {
  Rng rng(19);
  const IsotropicMetric m(1, 2, -1);
  const double h = 1e-5;
  for (int t = 0; t < 10; ++t) {
    const auto x0 = random_gaussian(3, rng, 0.5);
    const auto fd = (1.0 / (2 * h)) * (ode_solution_X(m, x0, 0.5 + h) - ode_solution_X(m, x0, 0.5 - h));
    EXPECT_MATRIX_NEAR(fd, geodesic_ode_rhs(m, ode_solution_X(m, x0, 0.5)), 1e-7);
  }
}

TEST(GeodesicSpec, ValidateRejectsBadStart) {
  GeodesicSpec spec{SquareMatrix::diagonal({-1.0, 1.0}), SquareMatrix::zeros(2), kUnit};
  EXPECT_THROW(spec.validate(), Error);
  spec.start = SquareMatrix::identity(3);
  EXPECT_THROW(spec.validate(), Error);
}

TEST(PathLength, StraightSegmentEuclidean) {
  const DiscretePath path{{SquareMatrix::identity(2), SquareMatrix::diagonal({2.0, 0.5})},
                          EuclideanFrobenius{}};
  EXPECT_DOUBLE_EQ(path_length(path), std::sqrt(5.0) / 2);
}

TEST(PathLength, SampledGeodesicConverges) {
  const GeodesicSpec spec{SquareMatrix::identity(2),
                          SquareMatrix::diagonal({std::log(2.0), -std::log(2.0)}), kUnit};
  const double exact = std::numbers::sqrt2 * std::log(2.0);
  EXPECT_NEAR(path_length(sample_geodesic(spec, 256, LeftInvariant{kUnit})), exact, 1e-4);
  const double e64 = std::abs(path_length(sample_geodesic(spec, 64, LeftInvariant{kUnit})) - exact);
  const double e128 = std::abs(path_length(sample_geodesic(spec, 128, LeftInvariant{kUnit})) - exact);
  EXPECT_NEAR(e64 / e128, 4.0, 0.1);
}

TEST(PathLength, ConstantPathIsZero) {
  const auto a = SquareMatrix::diagonal({2.0, 0.5});
  EXPECT_EQ(path_length(DiscretePath{{a, a, a}, LeftInvariant{kUnit}}), 0.0);
}

TEST(PathLength, SingularMidpointThrows) {
  const DiscretePath path{{SquareMatrix::identity(2), SquareMatrix::diagonal({-1.0, -1.0})},
                          EuclideanFrobenius{}};
  try {
    (void)path_length(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MidpointSingular);
  }
}

}  // namespace
}  // namespace strainlab
