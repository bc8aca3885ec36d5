#include "strainlab/random.hpp"

#include <cmath>
#include <vector>

#include "strainlab/decompositions.hpp"

namespace strainlab {
namespace {

std::vector<double> log_uniform_diagonal(std::size_t n, Rng& rng, double max_condition) {
  const double half = 0.5 * std::log(max_condition);
  std::uniform_real_distribution<double> u(-half, half);
  std::vector<double> d(n);
  for (double& v : d) v = std::exp(u(rng));
  return d;
}

}  // namespace

SquareMatrix random_gaussian(std::size_t n, Rng& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  SquareMatrix m(n);
  for (double& v : m.data()) v = g(rng);
  return m;
}

SquareMatrix random_symmetric(std::size_t n, Rng& rng, double scale) {
  return random_gaussian(n, rng, scale).sym();
}

SquareMatrix random_skew(std::size_t n, Rng& rng, double scale) {
  return random_gaussian(n, rng, scale).skew();
}

SquareMatrix random_orthogonal(std::size_t n, Rng& rng, int det_sign) {
  return orthonormalize(random_gaussian(n, rng), det_sign);
}

SquareMatrix random_gl_plus(std::size_t n, Rng& rng, double max_condition) {
  const SquareMatrix u = random_rotation(n, rng);
  const SquareMatrix v = random_rotation(n, rng);
  const std::vector<double> s = log_uniform_diagonal(n, rng, max_condition);
  return u * SquareMatrix::diagonal(s) * v.transpose();
}

SquareMatrix random_spd(std::size_t n, Rng& rng, double max_condition) {
  const SquareMatrix q = random_rotation(n, rng);
  const std::vector<double> s = log_uniform_diagonal(n, rng, max_condition);
  return (q * SquareMatrix::diagonal(s) * q.transpose()).sym();
}

}  // namespace strainlab
