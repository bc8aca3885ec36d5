#pragma once

#include <gtest/gtest.h>

#include "strainlab/matrix.hpp"

namespace strainlab::testing {

inline ::testing::AssertionResult MatrixNear(const char* a_expr, const char* b_expr, const char*,
                                             const SquareMatrix& a, const SquareMatrix& b,
                                             double tol) {
  if (a.dim() != b.dim()) {
    return ::testing::AssertionFailure()
           << a_expr << " is " << a.dim() << "x" << a.dim() << ", " << b_expr << " is " << b.dim()
           << "x" << b.dim();
  }
  const double d = frobenius_distance(a, b);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure()
         << "||" << a_expr << " - " << b_expr << "||_F = " << d << " exceeds " << tol;
}

}  // namespace strainlab::testing

#define EXPECT_MATRIX_NEAR(a, b, tol) \
  EXPECT_PRED_FORMAT3(::strainlab::testing::MatrixNear, a, b, tol)
