#pragma once

#include <vector>

#include "strainlab/matrix.hpp"

namespace strainlab {

/// S = Q diag(lambda) Q^T with lambda descending.
struct SymEigen {
  SquareMatrix Q;
  std::vector<double> lambda;
};

/// A = U diag(sigma) V^T with det U = det V = +1 and sigma descending.
struct SvdSpecial {
  SquareMatrix U;
  std::vector<double> sigma;
  SquareMatrix V;
};

/// A = O P with O in SO(n) and P symmetric positive-definite.
struct PolarDecomposition {
  SquareMatrix O;
  SquareMatrix P;
};

/**
 * Cyclic Jacobi eigensolver for symmetric matrices.
 *
 * Sweeps until every off-diagonal entry is below 1e-14 * ||S||_F, with a
 * budget of 30 sweeps. Ties in the eigenvalue ordering keep the order in
 * which the sweep left them.
 *
 * Throws NotSymmetric when max |S - S^T| exceeds 1e-10 * ||S||_F and
 * NoConvergence when the sweep budget is exhausted.
 */
SymEigen sym_eigen(const SquareMatrix& s);

/**
 * SVD with both orthogonal factors in SO(n), for det A > 0.
 *
 * V and sigma^2 come from the eigen-decomposition of A^T A; U = A V diag(1/sigma).
 * If the raw factors both have determinant -1, the last columns of U and V are
 * negated together, which leaves the product unchanged. Accuracy is adequate up
 * to a condition number of about 1e4.
 */
SvdSpecial svd_special(const SquareMatrix& a);

/// O = U V^T, P = V diag(sigma) V^T from svd_special.
PolarDecomposition polar(const SquareMatrix& a);

/// Scaling and squaring: scale until ||X / 2^s||_F <= 0.5, Taylor order 18.
SquareMatrix mat_exp(const SquareMatrix& x);

/// Symmetric logarithm of an SPD matrix. Throws NotSPD.
SquareMatrix spd_log(const SquareMatrix& p);

/// Symmetric square root of an SPD matrix. Throws NotSPD.
SquareMatrix spd_sqrt(const SquareMatrix& p);

/**
 * A skew-symmetric W with exp(W) = R for R in SO(n).
 *
 * Uses log R = f(S) K with S = sym R, K = skew R and f(c) = acos(c) / sqrt(1 - c^2)
 * applied spectrally to S. Planes rotated by exactly pi (where K vanishes) get
 * an arbitrary orientation. Loses accuracy for angles very close to pi.
 */
SquareMatrix rotation_log(const SquareMatrix& r);

/// Columns of a Gram-Schmidt orthonormalization of A, re-signed so det = sign.
SquareMatrix orthonormalize(const SquareMatrix& a, int det_sign);

}  // namespace strainlab
