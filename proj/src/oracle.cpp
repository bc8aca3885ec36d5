#include "strainlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "strainlab/decompositions.hpp"
#include "strainlab/strain.hpp"

namespace strainlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMidpointDetFloor = 1e-10;
constexpr double kInitDetFloor = 1e-6;
constexpr int kMaxHalvings = 60;
constexpr double kStepGrowth = 1.5;

SquareMatrix hat3(double x, double y, double z) {
  return SquareMatrix::from_rows({{0.0, -z, y}, {z, 0.0, -x}, {-y, x, 0.0}});
}

SquareMatrix rodrigues(double x, double y, double z) {
  const double theta = std::sqrt(x * x + y * y + z * z);
  const SquareMatrix w = hat3(x, y, z);
  const SquareMatrix id = SquareMatrix::identity(3);
  if (theta < 1e-12) return id + w;
  return id + (std::sin(theta) / theta) * w + ((1.0 - std::cos(theta)) / (theta * theta)) * (w * w);
}

double grid_coordinate(int i, int resolution) {
  return -std::numbers::pi + 2.0 * std::numbers::pi * i / (resolution - 1);
}

// Skew basis S_p = E_ij - E_ji for i < j, in row-major order of (i, j).
std::vector<SquareMatrix> skew_basis(std::size_t n) {
  std::vector<SquareMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      SquareMatrix s(n);
      s(i, j) = 1.0;
      s(j, i) = -1.0;
      basis.push_back(std::move(s));
    }
  return basis;
}

SquareMatrix skew_from_params(std::span<const double> w, const std::vector<SquareMatrix>& basis,
                              std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t p = 0; p < basis.size(); ++p) m += w[p] * basis[p];
  return m;
}

// Solves G d = g for the symmetric positive-definite Gram matrix G.
std::vector<double> solve_gram(const SquareMatrix& gram, std::span<const double> g) {
  const SquareMatrix inv = inverse(gram);
  std::vector<double> d(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) d[i] += inv(i, j) * g[j];
  return d;
}

// Gram matrix of the metric at `base` on the directions {map(E_a)}.
template <typename Map>
SquareMatrix gram_matrix(const MetricKind& kind, const SquareMatrix& base, std::size_t count,
                         Map direction) {
  const SquareMatrix base_inv = inverse(base);
  std::vector<SquareMatrix> dirs;
  dirs.reserve(count);
  for (std::size_t a = 0; a < count; ++a) dirs.push_back(direction(a));
  SquareMatrix gram(count);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a; b < count; ++b) {
      const double v = g_at_with_inverse(kind, base_inv, dirs[a], dirs[b]);
      gram(a, b) = v;
      gram(b, a) = v;
    }
  return gram;
}

// g_mid(dP, dP) for one chord, or +inf when the midpoint is singular.
double chord_energy(const MetricKind& kind, const SquareMatrix& from, const SquareMatrix& to) {
  const SquareMatrix delta = to - from;
  const SquareMatrix mid = 0.5 * (from + to);
  if (std::abs(det(mid)) < kMidpointDetFloor) return kInf;
  if (std::holds_alternative<EuclideanFrobenius>(kind)) return frobenius_ip(delta, delta);
  try {
    return g_at_with_inverse(kind, inverse(mid), delta, delta);
  } catch (const Error&) {
    return kInf;
  }
}

std::vector<SquareMatrix> straight_nodes(const SquareMatrix& from, const SquareMatrix& to, int k) {
  std::vector<SquareMatrix> nodes;
  for (int i = 0; i <= k; ++i) {
    const double t = static_cast<double>(i) / k;
    nodes.push_back((1.0 - t) * from + t * to);
  }
  return nodes;
}

std::vector<SquareMatrix> polar_interpolation_nodes(const SquareMatrix& from, const SquareMatrix& to,
                                                    int k) {
  const PolarDecomposition pf = polar(from);
  const PolarDecomposition pt = polar(to);
  const SquareMatrix w = rotation_log(pf.O.transpose() * pt.O);
  const SquareMatrix lf = spd_log(pf.P);
  const SquareMatrix lt = spd_log(pt.P);
  std::vector<SquareMatrix> nodes;
  for (int i = 0; i <= k; ++i) {
    const double t = static_cast<double>(i) / k;
    nodes.push_back(pf.O * mat_exp(t * w) * mat_exp((1.0 - t) * lf + t * lt));
  }
  nodes.front() = from;
  nodes.back() = to;
  return nodes;
}

bool straight_path_is_usable(const std::vector<SquareMatrix>& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(det(nodes[i]) >= kInitDetFloor)) return false;
    if (i + 1 < nodes.size() && !(det(0.5 * (nodes[i] + nodes[i + 1])) >= kInitDetFloor)) return false;
  }
  return true;
}

// Discrete path with interior nodes and (optionally) a rotation endpoint
// anchor * exp(W) as free variables.
class PathProblem {
 public:
  PathProblem(std::vector<SquareMatrix> nodes, const MetricKind& kind, bool endpoint_free)
      : kind_(kind),
        n_(nodes.front().dim()),
        anchor_(nodes.back()),
        free_end_(endpoint_free),
        basis_(endpoint_free ? skew_basis(n_) : std::vector<SquareMatrix>{}),
        nodes_(std::move(nodes)),
        w_(basis_.size(), 0.0) {}

  std::size_t segments() const { return nodes_.size() - 1; }
  const std::vector<SquareMatrix>& nodes() const { return nodes_; }

  double energy() const {
    double e = 0.0;
    for (std::size_t k = 0; k < segments(); ++k) {
      e += chord_energy(kind_, nodes_[k], nodes_[k + 1]);
      if (!std::isfinite(e)) return kInf;
    }
    return e;
  }

  // Preconditioned descent direction: per-node natural gradient.
  struct Direction {
    std::vector<std::vector<double>> nodes;  // interior nodes 1..K-1
    std::vector<double> w;
  };

  Direction direction() const {
    const std::size_t nn = n_ * n_;
    Direction d;
    for (std::size_t k = 1; k < segments(); ++k) {
      SquareMatrix node = nodes_[k];
      const double h = 1e-6 * (1.0 + node.frobenius_norm());
      std::vector<double> grad(nn);
      for (std::size_t e = 0; e < nn; ++e) {
        const double orig = node.data()[e];
        node.data()[e] = orig + h;
        const double fp = local_energy(k, node);
        node.data()[e] = orig - h;
        const double fm = local_energy(k, node);
        node.data()[e] = orig;
        grad[e] = finite_difference(fp, fm, local_energy(k, node), h);
      }
      const SquareMatrix gram = gram_matrix(kind_, nodes_[k], nn, [&](std::size_t a) {
        SquareMatrix ea(n_);
        ea.data()[a] = 1.0;
        return ea;
      });
      d.nodes.push_back(solve_gram(gram, grad));
    }
    if (free_end_) {
      const double h = 1e-6;
      std::vector<double> grad(w_.size());
      std::vector<double> w = w_;
      const SquareMatrix& prev = nodes_[segments() - 1];
      for (std::size_t p = 0; p < w.size(); ++p) {
        const double orig = w[p];
        w[p] = orig + h;
        const double fp = chord_energy(kind_, prev, endpoint(w));
        w[p] = orig - h;
        const double fm = chord_energy(kind_, prev, endpoint(w));
        w[p] = orig;
        grad[p] = finite_difference(fp, fm, chord_energy(kind_, prev, nodes_.back()), h);
      }
      const SquareMatrix& q = nodes_.back();
      const SquareMatrix gram =
          gram_matrix(kind_, q, basis_.size(), [&](std::size_t a) { return q * basis_[a]; });
      d.w = solve_gram(gram, grad);
    }
    return d;
  }

  // Candidate after a step of size s along -d; nullopt if a node leaves GL(n)+.
  std::optional<PathProblem> stepped(const Direction& d, double s) const {
    PathProblem next = *this;
    for (std::size_t k = 1; k < segments(); ++k) {
      auto entries = next.nodes_[k].data();
      for (std::size_t e = 0; e < entries.size(); ++e) entries[e] -= s * d.nodes[k - 1][e];
      if (!(det(next.nodes_[k]) > 0.0)) return std::nullopt;
    }
    if (free_end_) {
      for (std::size_t p = 0; p < next.w_.size(); ++p) next.w_[p] -= s * d.w[p];
      next.nodes_.back() = next.endpoint(next.w_);
    }
    return next;
  }

 private:
  double local_energy(std::size_t k, const SquareMatrix& node) const {
    return chord_energy(kind_, nodes_[k - 1], node) + chord_energy(kind_, node, nodes_[k + 1]);
  }

  static double finite_difference(double fp, double fm, double f0, double h) {
    if (std::isfinite(fp) && std::isfinite(fm)) return (fp - fm) / (2.0 * h);
    if (std::isfinite(fp)) return (fp - f0) / h;
    if (std::isfinite(fm)) return (f0 - fm) / h;
    return 0.0;
  }

  SquareMatrix endpoint(std::span<const double> w) const {
    return anchor_ * mat_exp(skew_from_params(w, basis_, n_));
  }

  MetricKind kind_;
  std::size_t n_;
  SquareMatrix anchor_;
  bool free_end_;
  std::vector<SquareMatrix> basis_;
  std::vector<SquareMatrix> nodes_;
  std::vector<double> w_;
};

}  // namespace

SquareMatrix rotation2(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return SquareMatrix::from_rows({{c, -s}, {s, c}});
}

RotationSampler::RotationSampler(std::size_t n, std::uint64_t seed, RotationScheme scheme)
    : n_(n), seed_(seed), scheme_(scheme), rng_(seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sampler dimension must be >= 1");
  if (const auto* u = std::get_if<UniformRandom>(&scheme_)) {
    total_ = u->count;
  } else if (const auto* g = std::get_if<GridAngle>(&scheme_)) {
    if (n != 2) throw Error(ErrorCode::UnsupportedDimension, "GridAngle sampling needs n = 2");
    if (!(g->step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be > 0");
    total_ = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / g->step));
  } else {
    const auto& a = std::get<AxisAngleGrid>(scheme_);
    if (n != 3) throw Error(ErrorCode::UnsupportedDimension, "AxisAngleGrid sampling needs n = 3");
    if (a.resolution < 2) throw Error(ErrorCode::InvalidArgument, "grid resolution must be >= 2");
    // Points of the cube grid inside the ball of radius pi.
    for (int i = 0; i < a.resolution; ++i)
      for (int j = 0; j < a.resolution; ++j)
        for (int k = 0; k < a.resolution; ++k) {
          const double x = grid_coordinate(i, a.resolution);
          const double y = grid_coordinate(j, a.resolution);
          const double z = grid_coordinate(k, a.resolution);
          if (x * x + y * y + z * z <= std::numbers::pi * std::numbers::pi) ++total_;
        }
  }
}

void RotationSampler::reset() {
  rng_.seed(seed_);
  index_ = 0;
  grid_i_ = grid_j_ = grid_k_ = 0;
}

std::optional<SquareMatrix> RotationSampler::next() {
  if (index_ >= total_) return std::nullopt;
  if (std::holds_alternative<UniformRandom>(scheme_)) {
    ++index_;
    return random_rotation(n_, rng_);
  }
  if (const auto* g = std::get_if<GridAngle>(&scheme_)) {
    return rotation2(static_cast<double>(index_++) * g->step);
  }
  const int r = std::get<AxisAngleGrid>(scheme_).resolution;
  while (grid_i_ < r) {
    const double x = grid_coordinate(grid_i_, r);
    const double y = grid_coordinate(grid_j_, r);
    const double z = grid_coordinate(grid_k_, r);
    if (++grid_k_ == r) {
      grid_k_ = 0;
      if (++grid_j_ == r) {
        grid_j_ = 0;
        ++grid_i_;
      }
    }
    if (x * x + y * y + z * z <= std::numbers::pi * std::numbers::pi) {
      ++index_;
      return rodrigues(x, y, z);
    }
  }
  return std::nullopt;
}

RotationSearchResult min_over_rotations(const SquareMatrix& a, RotationObjective objective,
                                        RotationSampler& sampler) {
  if (sampler.dim() != a.dim()) {
    throw Error(ErrorCode::UnsupportedDimension, "sampler dimension does not match the matrix");
  }
  const std::optional<SquareMatrix> a_inv =
      objective == RotationObjective::SymmetrizedFrobenius ? std::optional(inverse(a)) : std::nullopt;

  RotationSearchResult best{kInf, SquareMatrix::identity(a.dim()), 0};
  while (auto q = sampler.next()) {
    double v = frobenius_distance(a, *q);
    if (a_inv) v += frobenius_distance(*a_inv, q->transpose());
    ++best.evaluated;
    if (v < best.value) {
      best.value = v;
      best.argmin = std::move(*q);
    }
  }
  return best;
}

void PathOptimizerConfig::validate() const {
  if (nodes < 4) throw Error(ErrorCode::InvalidArgument, "path optimizer needs nodes >= 4");
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be positive");
  if (!(step_size > 0.0)) throw Error(ErrorCode::InvalidArgument, "step_size must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
}

PathOptimizationResult shortest_path(const SquareMatrix& from, const SquareMatrix& to,
                                     const MetricKind& kind, const PathOptimizerConfig& cfg) {
  cfg.validate();
  require_same_dim(from, to);
  if (!(det(from) > 0.0) || !(det(to) > 0.0)) {
    throw Error(ErrorCode::NegativeDeterminant, "path endpoints must have det > 0");
  }
  if (cfg.endpoint_free && orthogonality_defect(to) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "a free endpoint must start on SO(n)");
  }

  std::vector<SquareMatrix> init = straight_nodes(from, to, cfg.nodes);
  if (!straight_path_is_usable(init)) init = polar_interpolation_nodes(from, to, cfg.nodes);

  PathProblem problem(std::move(init), kind, cfg.endpoint_free);
  double energy = problem.energy();
  if (!std::isfinite(energy)) {
    throw Error(ErrorCode::MidpointSingular, "initial path has a singular midpoint");
  }

  bool converged = false;
  int iter = 0;
  double step = cfg.step_size;
  for (; iter < cfg.max_iters && !converged; ++iter) {
    if (energy <= std::numeric_limits<double>::min()) {
      converged = true;
      break;
    }
    const auto dir = problem.direction();
    bool accepted = false;
    for (int halving = 0; halving < kMaxHalvings; ++halving, step *= 0.5) {
      auto candidate = problem.stepped(dir, step);
      if (!candidate) continue;
      const double e = candidate->energy();
      if (e < energy) {
        const double rel = (energy - e) / energy;
        problem = std::move(*candidate);
        energy = e;
        accepted = true;
        converged = rel < cfg.tol;
        break;
      }
    }
    // No descent along the direction at any step size: stationary to FD accuracy.
    if (!accepted) converged = true;
    step *= kStepGrowth;
  }

  DiscretePath path{problem.nodes(), kind};
  const double length = path_length(path);
  return PathOptimizationResult{length, std::move(path), converged, iter};
}

PathOptimizationResult intrinsic_distance_to_SOn(const SquareMatrix& a, const MetricKind& kind,
                                                 PathOptimizerConfig cfg) {
  return shortest_path(a, closest_rotation(a), kind, cfg);
}

SquareMatrix unit_upper_bidiagonal(std::size_t n) {
  SquareMatrix a = SquareMatrix::identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  return a;
}

Counterexample biinvariance_counterexample(std::size_t n, int k) {
  if (n < 2) throw Error(ErrorCode::UnsupportedDimension, "counterexample needs n >= 2");
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
  if (k > 60) throw Error(ErrorCode::Overflow, "k > 60 overflows the conjugating scale");
  // (D^-k A D^k)_{i,i+1} = 2^{ik} 2^{-(i+1)k} = 2^-k.
  SquareMatrix c = SquareMatrix::identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) c(i, i + 1) = std::ldexp(1.0, -k);
  const double d = frobenius_distance(c, SquareMatrix::identity(n));
  return Counterexample{std::move(c), d};
}

namespace {

constexpr int kSegmentSamples = 1024;

double segment_det(const SquareMatrix& a, const SquareMatrix& diff, double t) {
  return det(a + t * diff);
}

double golden_section_min(const SquareMatrix& a, const SquareMatrix& diff, double lo, double hi,
                          double* t_min) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = segment_det(a, diff, x1);
  double f2 = segment_det(a, diff, x2);
  for (int i = 0; i < 80 && hi - lo > 1e-15; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = segment_det(a, diff, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = segment_det(a, diff, x2);
    }
  }
  *t_min = f1 < f2 ? x1 : x2;
  return std::min(f1, f2);
}

}  // namespace

std::optional<double> segment_exit_point(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a, b);
  const SquareMatrix diff = b - a;
  std::vector<double> f(kSegmentSamples + 1);
  for (int i = 0; i <= kSegmentSamples; ++i) {
    f[i] = segment_det(a, diff, static_cast<double>(i) / kSegmentSamples);
  }
  for (int i = 0; i <= kSegmentSamples; ++i) {
    if (f[i] > 0.0) continue;
    if (i == 0) return 0.0;
    // Bisection on [t_{i-1}, t_i], where det goes from > 0 to <= 0.
    double lo = static_cast<double>(i - 1) / kSegmentSamples;
    double hi = static_cast<double>(i) / kSegmentSamples;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (segment_det(a, diff, mid) > 0.0 ? lo : hi) = mid;
    }
    return hi;
  }
  // All samples positive: the determinant may still dip to zero between samples.
  for (int i = 1; i < kSegmentSamples; ++i) {
    if (f[i] <= f[i - 1] && f[i] <= f[i + 1]) {
      double t = 0.0;
      const double lo = static_cast<double>(i - 1) / kSegmentSamples;
      const double hi = static_cast<double>(i + 1) / kSegmentSamples;
      if (golden_section_min(a, diff, lo, hi, &t) <= 0.0) return t;
    }
  }
  return std::nullopt;
}

bool segment_exits_glnplus(const SquareMatrix& a, const SquareMatrix& b) {
  return segment_exit_point(a, b).has_value();
}

}  // namespace strainlab
