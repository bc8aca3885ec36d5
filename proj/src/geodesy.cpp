#include "strainlab/geodesy.hpp"

#include <cmath>

#include "strainlab/decompositions.hpp"

namespace strainlab {
namespace {

constexpr double kMidpointDetFloor = 1e-10;

}  // namespace

void GeodesicSpec::validate() const {
  require_same_dim(start, velocity);
  if (!(det(start) > 0.0)) throw Error(ErrorCode::NegativeDeterminant, "geodesic start has det <= 0");
  metric.require_dimension(start.dim());
}

SquareMatrix geodesic_eval(const GeodesicSpec& spec, double t) {
  spec.validate();
  const double kappa = spec.metric.kappa();
  const SquareMatrix& x0 = spec.velocity;
  const SquareMatrix x0t = x0.transpose();
  const SquareMatrix first = mat_exp(((1.0 - kappa) * t) * x0 + (kappa * t) * x0t);
  const SquareMatrix second = mat_exp((kappa * t) * (x0 - x0t));
  // Left-translating the geodesic from I reproduces this product bitwise.
  return spec.start * (first * second);
}

SquareMatrix geodesic_ode_rhs(const IsotropicMetric& m, const SquareMatrix& x) {
  const SquareMatrix xt = x.transpose();
  return m.kappa() * (xt * x - x * xt);
}

SquareMatrix geodesic_integrate(const GeodesicSpec& spec, double t_end, int steps) {
  spec.validate();
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "steps must be >= 1");
  const double h = t_end / steps;
  const IsotropicMetric& m = spec.metric;

  SquareMatrix g = spec.start;
  SquareMatrix x = spec.velocity;
  for (int s = 0; s < steps; ++s) {
    const SquareMatrix kg1 = g * x;
    const SquareMatrix kx1 = geodesic_ode_rhs(m, x);

    const SquareMatrix g2 = g + (0.5 * h) * kg1;
    const SquareMatrix x2 = x + (0.5 * h) * kx1;
    const SquareMatrix kg2 = g2 * x2;
    const SquareMatrix kx2 = geodesic_ode_rhs(m, x2);

    const SquareMatrix g3 = g + (0.5 * h) * kg2;
    const SquareMatrix x3 = x + (0.5 * h) * kx2;
    const SquareMatrix kg3 = g3 * x3;
    const SquareMatrix kx3 = geodesic_ode_rhs(m, x3);

    const SquareMatrix g4 = g + h * kg3;
    const SquareMatrix x4 = x + h * kx3;
    const SquareMatrix kg4 = g4 * x4;
    const SquareMatrix kx4 = geodesic_ode_rhs(m, x4);

    g += (h / 6.0) * (kg1 + 2.0 * kg2 + 2.0 * kg3 + kg4);
    x += (h / 6.0) * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);
  }
  return g;
}

SquareMatrix ode_solution_X(const IsotropicMetric& m, const SquareMatrix& x0, double t) {
  const SquareMatrix w = (m.kappa() * t) * (x0 - x0.transpose());
  return mat_exp(-w) * x0 * mat_exp(w);
}

void DiscretePath::validate() const {
  if (nodes.size() < 2) throw Error(ErrorCode::InvalidArgument, "a path needs at least two nodes");
  for (const auto& node : nodes) {
    require_same_dim(nodes.front(), node);
    if (!(det(node) > 0.0)) throw Error(ErrorCode::NegativeDeterminant, "path node has det <= 0");
  }
}

double segment_length(const MetricKind& kind, const SquareMatrix& from, const SquareMatrix& to) {
  const SquareMatrix delta = to - from;
  const SquareMatrix mid = 0.5 * (from + to);
  if (std::abs(det(mid)) < kMidpointDetFloor) {
    throw Error(ErrorCode::MidpointSingular, "path midpoint is numerically singular");
  }
  return std::sqrt(std::max(0.0, g_at(kind, mid, delta, delta)));
}

double path_length(const DiscretePath& path) {
  path.validate();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.nodes.size(); ++k) {
    total += segment_length(path.metric, path.nodes[k], path.nodes[k + 1]);
  }
  return total;
}

DiscretePath sample_geodesic(const GeodesicSpec& spec, int segments, const MetricKind& metric) {
  if (segments < 1) throw Error(ErrorCode::InvalidArgument, "segments must be >= 1");
  DiscretePath path{{}, metric};
  path.nodes.reserve(static_cast<std::size_t>(segments) + 1);
  for (int k = 0; k <= segments; ++k) {
    path.nodes.push_back(geodesic_eval(spec, static_cast<double>(k) / segments));
  }
  return path;
}

}  // namespace strainlab
