#pragma once

#include <cstdint>
#include <random>

#include "strainlab/matrix.hpp"

namespace strainlab {

using Rng = std::mt19937_64;

/// Entries i.i.d. N(0, scale^2).
SquareMatrix random_gaussian(std::size_t n, Rng& rng, double scale = 1.0);
SquareMatrix random_symmetric(std::size_t n, Rng& rng, double scale = 1.0);
SquareMatrix random_skew(std::size_t n, Rng& rng, double scale = 1.0);

/// Orthonormalized Gaussian matrix with det = det_sign (+1 or -1).
SquareMatrix random_orthogonal(std::size_t n, Rng& rng, int det_sign);
inline SquareMatrix random_rotation(std::size_t n, Rng& rng) { return random_orthogonal(n, rng, +1); }

/// U diag(sigma) V^T with U, V random rotations and log sigma_i uniform in
/// [-ln(c)/2, ln(c)/2], so the condition number is at most c.
SquareMatrix random_gl_plus(std::size_t n, Rng& rng, double max_condition);

/// Q diag(lambda) Q^T with log lambda_i uniform in [-ln(c)/2, ln(c)/2].
SquareMatrix random_spd(std::size_t n, Rng& rng, double max_condition);

}  // namespace strainlab
