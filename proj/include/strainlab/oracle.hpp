#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "strainlab/geodesy.hpp"
#include "strainlab/matrix.hpp"
#include "strainlab/metric.hpp"
#include "strainlab/random.hpp"

namespace strainlab {

// Brute-force counterparts of the closed-form strain results. Nothing here
// calls into the strain formulas; the optimizer only uses closest_rotation to
// seed its initial path.

struct UniformRandom {
  std::size_t count;
};
/// SO(2) rotations R(k * step), k = 0 .. ceil(2 pi / step) - 1.
struct GridAngle {
  double step;
};
/// SO(3) rotations exp(hat(w)) for w on a resolution^3 grid over [-pi, pi]^3, |w| <= pi.
struct AxisAngleGrid {
  int resolution;
};
using RotationScheme = std::variant<UniformRandom, GridAngle, AxisAngleGrid>;

/// Deterministic stream of rotations. Stateful: owned by one caller at a time.
class RotationSampler {
 public:
  /// Throws UnsupportedDimension when the scheme does not fit n, InvalidArgument
  /// for a non-positive step or resolution.
  RotationSampler(std::size_t n, std::uint64_t seed, RotationScheme scheme);

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return total_; }

  /// Next rotation, or nullopt once the scheme is exhausted.
  std::optional<SquareMatrix> next();
  void reset();

 private:
  std::size_t n_;
  std::uint64_t seed_;
  RotationScheme scheme_;
  Rng rng_;
  std::size_t index_ = 0;
  std::size_t total_ = 0;
  int grid_i_ = 0;
  int grid_j_ = 0;
  int grid_k_ = 0;
};

/// 2x2 rotation by theta.
SquareMatrix rotation2(double theta);

enum class RotationObjective {
  FrobeniusDistance,     // ||A - Q||_F
  SymmetrizedFrobenius,  // ||A - Q||_F + ||A^-1 - Q^T||_F
};

struct RotationSearchResult {
  double value;
  SquareMatrix argmin;
  std::size_t evaluated;
};

/// Minimum of the objective over every rotation the sampler still emits.
RotationSearchResult min_over_rotations(const SquareMatrix& a, RotationObjective objective,
                                        RotationSampler& sampler);

struct PathOptimizerConfig {
  int nodes = 32;  // number of segments K; the path has K + 1 nodes
  int max_iters = 20000;
  double step_size = 0.25;
  double tol = 1e-12;
  bool endpoint_free = true;

  void validate() const;
};

struct PathOptimizationResult {
  double value;  // path_length of the final path
  DiscretePath path;
  bool converged;
  int iterations;
};

/**
 * Shortest discrete path from `from` to `to` under the given metric.
 *
 * Minimizes the discrete energy sum_k g_mid(dP_k, dP_k) over the interior
 * nodes by gradient descent with central finite-difference gradients
 * (h = 1e-6 (1 + ||node||_F)). Each node's gradient is preconditioned by the
 * inverse metric tensor at that node. Steps that do not decrease the energy,
 * or that create a midpoint with |det| < 1e-10, are halved until they do.
 *
 * With cfg.endpoint_free, `to` must be a rotation and the endpoint moves as
 * to * exp(W) with W skew, so it stays on SO(n).
 *
 * The initial path is the straight segment. If a node or a midpoint of it has
 * det < 1e-6, the path is instead seeded with the polar interpolation
 * O_from exp(t log(O_from^T O_to)) exp((1 - t) log P_from + t log P_to).
 *
 * If the relative energy change is still above cfg.tol after cfg.max_iters,
 * the best path found is returned with converged = false.
 */
PathOptimizationResult shortest_path(const SquareMatrix& from, const SquareMatrix& to,
                                     const MetricKind& kind, const PathOptimizerConfig& cfg);

/// shortest_path from A to closest_rotation(A) with a free endpoint on SO(n).
PathOptimizationResult intrinsic_distance_to_SOn(const SquareMatrix& a, const MetricKind& kind,
                                                 PathOptimizerConfig cfg);

struct Counterexample {
  SquareMatrix conjugate;  // D^-k A D^k
  double frobenius_to_I;
};

/**
 * D^-k A D^k for A the unit upper bidiagonal matrix and D = diag(2^-1, ..., 2^-n).
 *
 * Every superdiagonal entry of the conjugate is 2^-k, so its distance to I is
 * sqrt(n - 1) 2^-k while A itself stays at distance sqrt(n - 1). Throws
 * Overflow for k > 60.
 */
Counterexample biinvariance_counterexample(std::size_t n, int k);

/// The unit upper bidiagonal matrix used by biinvariance_counterexample.
SquareMatrix unit_upper_bidiagonal(std::size_t n);

/**
 * True iff min over t in [0, 1] of det(A + t (B - A)) <= 0.
 *
 * Samples 1025 points; sampled local minima are refined by golden-section
 * search.
 */
bool segment_exits_glnplus(const SquareMatrix& a, const SquareMatrix& b);

/// First t where det(A + t (B - A)) <= 0, located by bisection on the first
/// sampled sign change; nullopt when the segment stays in GL(n)+.
std::optional<double> segment_exit_point(const SquareMatrix& a, const SquareMatrix& b);

}  // namespace strainlab
