#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "strainlab/matrix.hpp"

namespace strainlab {

/**
 * Isotropic inner product on M_n at the identity:
 *
 *   g_I(X, Y) = alpha tr(X) tr(Y) + beta tr(sym X sym Y) + gamma tr(skew X skew Y).
 *
 * Requires alpha >= 0, beta > 0, gamma < 0 so that g_I is positive-definite
 * (tr(W W) <= 0 for skew W). kappa = (beta - gamma) / (2 beta) is the twist
 * rate of the geodesics.
 */
class IsotropicMetric {
 public:
  /// Throws InvalidMetric on an out-of-domain parameter.
  IsotropicMetric(double alpha, double beta, double gamma);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double kappa() const noexcept { return kappa_; }

  /// Throws InvalidMetric unless n * alpha + beta > 0.
  void require_dimension(std::size_t n) const;

  friend bool operator==(const IsotropicMetric&, const IsotropicMetric&) = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double kappa_;
};

double gI(const IsotropicMetric& m, const SquareMatrix& x, const SquareMatrix& y);

/// sqrt(g_I(X, X)).
double gI_norm(const IsotropicMetric& m, const SquareMatrix& x);

struct LeftInvariant {
  IsotropicMetric metric;
};
struct EuclideanFrobenius {};
/// g + i*g, the sum of a left-invariant metric and its pullback under inversion.
struct SymmetrizedLeftInvariant {
  IsotropicMetric metric;
};

using MetricKind = std::variant<LeftInvariant, EuclideanFrobenius, SymmetrizedLeftInvariant>;

std::string metric_kind_name(const MetricKind& kind);

/**
 * Riemannian metric on GL(n) evaluated at base point B.
 *
 *   LeftInvariant             g_I(B^-1 X, B^-1 Y)
 *   EuclideanFrobenius        tr(X^T Y)
 *   SymmetrizedLeftInvariant  g_I(B^-1 X, B^-1 Y) + g_I(X B^-1, Y B^-1)
 *
 * Throws SingularInput when B is not invertible.
 */
double g_at(const MetricKind& kind, const SquareMatrix& b, const SquareMatrix& x,
            const SquareMatrix& y);

/// Same as g_at with B^-1 already available.
double g_at_with_inverse(const MetricKind& kind, const SquareMatrix& b_inv, const SquareMatrix& x,
                         const SquareMatrix& y);

using InnerProduct = std::function<double(const SquareMatrix&, const SquareMatrix&)>;

/// |ip(X, Y) - ip(U^T X U, U^T Y U)|.
double isotropy_defect(const InnerProduct& ip, const SquareMatrix& x, const SquareMatrix& y,
                       const SquareMatrix& u);

/**
 * Randomized conjugation-invariance check at dimension n.
 *
 * Each trial draws Gaussian X, Y and an orthogonal U, alternating det U = +1
 * and det U = -1, and requires the defect to stay within 1e-10 (1 + |ip(X, Y)|).
 */
bool check_isotropy(const InnerProduct& ip, std::size_t n, int trials, std::uint64_t seed);
bool check_isotropy(const IsotropicMetric& m, int trials, std::size_t n = 3,
                    std::uint64_t seed = 0x5eed);

}  // namespace strainlab
