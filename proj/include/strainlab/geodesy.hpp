#pragma once

#include <vector>

#include "strainlab/matrix.hpp"
#include "strainlab/metric.hpp"

namespace strainlab {

/**
 * Initial data of a geodesic of the left-invariant metric.
 *
 * The velocity is given in body coordinates: the actual initial velocity is
 * start * velocity, so velocity = X0 means gamma'(0) = A X0. This differs from
 * the Euclidean convention, where the velocity would be taken as-is.
 */
struct GeodesicSpec {
  SquareMatrix start;
  SquareMatrix velocity;
  IsotropicMetric metric;

  /// Throws on dimension mismatch or a start with det <= 0 / singular.
  void validate() const;
};

/// A exp((1 - kappa) t X0 + kappa t X0^T) exp(kappa t (X0 - X0^T)).
SquareMatrix geodesic_eval(const GeodesicSpec& spec, double t);

/// kappa (X^T X - X X^T): the body-velocity equation of the geodesic flow.
SquareMatrix geodesic_ode_rhs(const IsotropicMetric& m, const SquareMatrix& x);

/**
 * Classical RK4 on the coupled system gamma' = gamma X, X' = kappa (X^T X - X X^T)
 * from (A, X0), fixed step t_end / steps. Returns gamma(t_end).
 */
SquareMatrix geodesic_integrate(const GeodesicSpec& spec, double t_end, int steps);

/// exp(kappa t (X0^T - X0)) X0 exp(kappa t (X0 - X0^T)), the exact body velocity.
SquareMatrix ode_solution_X(const IsotropicMetric& m, const SquareMatrix& x0, double t);

/// Polyline in GL(n)+ with the metric used to measure it.
struct DiscretePath {
  std::vector<SquareMatrix> nodes;
  MetricKind metric;

  /// Throws InvalidArgument for fewer than two nodes, NegativeDeterminant for a
  /// node with det <= 0.
  void validate() const;
};

/**
 * Chord-midpoint quadrature of the curve length:
 *   sum_k sqrt(g_at(metric, (P_k + P_{k+1}) / 2, P_{k+1} - P_k, P_{k+1} - P_k)).
 *
 * Second-order accurate. Throws MidpointSingular when some midpoint has
 * |det| < 1e-10; the caller must refine the path.
 */
double path_length(const DiscretePath& path);

/// Length of one chord with midpoint base point; same rule as path_length.
double segment_length(const MetricKind& kind, const SquareMatrix& from, const SquareMatrix& to);

/// Nodes gamma(k / segments), k = 0..segments, of the closed-form geodesic.
DiscretePath sample_geodesic(const GeodesicSpec& spec, int segments, const MetricKind& metric);

}  // namespace strainlab
