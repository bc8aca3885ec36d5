#include "strainlab/metric.hpp"

#include <cmath>
#include <sstream>

#include "strainlab/random.hpp"

namespace strainlab {

IsotropicMetric::IsotropicMetric(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma), kappa_((beta - gamma) / (2.0 * beta)) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidMetric, "metric parameters must be finite");
  }
  if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidMetric, "alpha must be >= 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidMetric, "beta must be > 0");
  if (!(gamma < 0.0)) throw Error(ErrorCode::InvalidMetric, "gamma must be < 0");
}

void IsotropicMetric::require_dimension(std::size_t n) const {
  if (!(static_cast<double>(n) * alpha_ + beta_ > 0.0)) {
    throw Error(ErrorCode::InvalidMetric, "n * alpha + beta must be > 0");
  }
}

double gI(const IsotropicMetric& m, const SquareMatrix& x, const SquareMatrix& y) {
  require_same_dim(x, y);
  const std::size_t n = x.dim();
  // tr(sym X sym Y) and tr(skew X skew Y) expanded entrywise; skew is
  // antisymmetric so its trace product is -<skew X, skew Y>_F.
  double sym_ip = 0.0;
  double skew_ip = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double sx = 0.5 * (x(i, j) + x(j, i));
      const double sy = 0.5 * (y(i, j) + y(j, i));
      const double kx = 0.5 * (x(i, j) - x(j, i));
      const double ky = 0.5 * (y(i, j) - y(j, i));
      sym_ip += sx * sy;
      skew_ip -= kx * ky;
    }
  }
  return m.alpha() * x.trace() * y.trace() + m.beta() * sym_ip + m.gamma() * skew_ip;
}

double gI_norm(const IsotropicMetric& m, const SquareMatrix& x) {
  return std::sqrt(std::max(0.0, gI(m, x, x)));
}

std::string metric_kind_name(const MetricKind& kind) {
  std::ostringstream os;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, EuclideanFrobenius>) {
          os << "euclidean-frobenius";
        } else {
          os << (std::is_same_v<K, LeftInvariant> ? "left-invariant" : "symmetrized-left-invariant")
             << "(" << k.metric.alpha() << "," << k.metric.beta() << "," << k.metric.gamma() << ")";
        }
      },
      kind);
  return os.str();
}

double g_at_with_inverse(const MetricKind& kind, const SquareMatrix& b_inv, const SquareMatrix& x,
                         const SquareMatrix& y) {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, EuclideanFrobenius>) {
          return frobenius_ip(x, y);
        } else if constexpr (std::is_same_v<K, LeftInvariant>) {
          return gI(k.metric, b_inv * x, b_inv * y);
        } else {
          return gI(k.metric, b_inv * x, b_inv * y) + gI(k.metric, x * b_inv, y * b_inv);
        }
      },
      kind);
}

double g_at(const MetricKind& kind, const SquareMatrix& b, const SquareMatrix& x,
            const SquareMatrix& y) {
  require_same_dim(b, x);
  require_same_dim(b, y);
  if (std::holds_alternative<EuclideanFrobenius>(kind)) return frobenius_ip(x, y);
  return g_at_with_inverse(kind, inverse(b), x, y);
}

double isotropy_defect(const InnerProduct& ip, const SquareMatrix& x, const SquareMatrix& y,
                       const SquareMatrix& u) {
  const SquareMatrix ut = u.transpose();
  return std::abs(ip(x, y) - ip(ut * x * u, ut * y * u));
}

bool check_isotropy(const InnerProduct& ip, std::size_t n, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const SquareMatrix x = random_gaussian(n, rng);
    const SquareMatrix y = random_gaussian(n, rng);
    const SquareMatrix u = random_orthogonal(n, rng, t % 2 == 0 ? +1 : -1);
    if (isotropy_defect(ip, x, y, u) > 1e-10 * (1.0 + std::abs(ip(x, y)))) return false;
  }
  return true;
}

bool check_isotropy(const IsotropicMetric& m, int trials, std::size_t n, std::uint64_t seed) {
  m.require_dimension(n);
  return check_isotropy([&m](const SquareMatrix& x, const SquareMatrix& y) { return gI(m, x, y); },
                        n, trials, seed);
}

}  // namespace strainlab
