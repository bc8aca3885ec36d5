#include "strainlab/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace strainlab {
namespace {

constexpr int kJacobiSweeps = 30;
constexpr double kJacobiThreshold = 1e-14;
constexpr double kSymmetryTolerance = 1e-10;
constexpr double kSingularRatio = 1e-12;
constexpr double kOrthoDrift = 1e-12;
constexpr double kExpScaleTarget = 0.5;
constexpr int kExpTaylorOrder = 18;

double asymmetry(const SquareMatrix& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j) m = std::max(m, std::abs(s(i, j) - s(j, i)));
  return m;
}

double off_diagonal_max(const SquareMatrix& s) {
  double m = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j) m = std::max(m, std::abs(s(i, j)));
  return m;
}

// Applies f to the eigenvalues of a symmetric matrix.
template <typename F>
SquareMatrix spectral_map(const SymEigen& e, F f) {
  const std::size_t n = e.Q.dim();
  SquareMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.lambda[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double qi = e.Q(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += qi * e.Q(j, k);
    }
  }
  return r.sym();
}

SymEigen checked_spd_eigen(const SquareMatrix& p) {
  if (asymmetry(p) > kSymmetryTolerance * p.frobenius_norm()) {
    throw Error(ErrorCode::NotSPD, "matrix is not symmetric");
  }
  SymEigen e = sym_eigen(p.sym());
  if (!(e.lambda.back() > 0.0)) throw Error(ErrorCode::NotSPD, "matrix is not positive-definite");
  return e;
}

}  // namespace

SymEigen sym_eigen(const SquareMatrix& s) {
  const std::size_t n = s.dim();
  const double norm = s.frobenius_norm();
  if (asymmetry(s) > kSymmetryTolerance * norm) {
    throw Error(ErrorCode::NotSymmetric, "sym_eigen: input is not symmetric");
  }
  SquareMatrix a = s.sym();
  SquareMatrix q = SquareMatrix::identity(n);
  const double threshold = kJacobiThreshold * norm;

  bool converged = off_diagonal_max(a) <= threshold;
  for (int sweep = 0; sweep < kJacobiSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (std::abs(apr) <= threshold) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akr = a(k, r);
          a(k, p) = c * akp - sn * akr;
          a(k, r) = sn * akp + c * akr;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double ark = a(r, k);
          a(p, k) = c * apk - sn * ark;
          a(r, k) = sn * apk + c * ark;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double qkp = q(k, p);
          const double qkr = q(k, r);
          q(k, p) = c * qkp - sn * qkr;
          q(k, r) = sn * qkp + c * qkr;
        }
      }
    }
    converged = off_diagonal_max(a) <= threshold;
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "sym_eigen: sweep budget exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymEigen out{SquareMatrix(n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.lambda[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.Q(i, k) = q(i, order[k]);
  }
  return out;
}

SvdSpecial svd_special(const SquareMatrix& a) {
  const std::size_t n = a.dim();
  SymEigen e = sym_eigen((a.transpose() * a).sym());
  SquareMatrix v = std::move(e.Q);
  SquareMatrix av = a * v;

  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += av(i, k) * av(i, k);
    sigma[k] = std::sqrt(s);
  }
  if (!(sigma.back() >= kSingularRatio * sigma.front()) || sigma.front() == 0.0) {
    throw Error(ErrorCode::SingularInput, "svd_special: matrix is numerically singular");
  }
  if (!(det(a) > 0.0)) {
    throw Error(ErrorCode::NegativeDeterminant, "svd_special: det A <= 0");
  }

  SquareMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) u(i, k) = av(i, k) / sigma[k];
  if (orthogonality_defect(u) > kOrthoDrift) {
    // One Newton-Schulz polar step: U <- U (3I - U^T U) / 2.
    const SquareMatrix i3 = 3.0 * SquareMatrix::identity(n);
    u = 0.5 * (u * (i3 - u.transpose() * u));
  }

  if (det(v) < 0.0) {
    // det U det V = sign det A = +1, so both are -1 here.
    for (std::size_t i = 0; i < n; ++i) {
      u(i, n - 1) = -u(i, n - 1);
      v(i, n - 1) = -v(i, n - 1);
    }
  }
  return SvdSpecial{std::move(u), std::move(sigma), std::move(v)};
}

PolarDecomposition polar(const SquareMatrix& a) {
  SvdSpecial s = svd_special(a);
  SquareMatrix o = s.U * s.V.transpose();
  SymEigen vs{s.V, s.sigma};
  SquareMatrix p = spectral_map(vs, [](double x) { return x; });
  return PolarDecomposition{std::move(o), std::move(p)};
}

SquareMatrix mat_exp(const SquareMatrix& x) {
  const std::size_t n = x.dim();
  const double norm = x.frobenius_norm();
  int squarings = 0;
  if (norm > kExpScaleTarget) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kExpScaleTarget)));
  }
  const SquareMatrix xs = std::ldexp(1.0, -squarings) * x;
  const SquareMatrix id = SquareMatrix::identity(n);

  // Horner form of sum_{k=0}^{18} X^k / k!.
  SquareMatrix e = id;
  for (int k = kExpTaylorOrder; k >= 1; --k) {
    e = id + (1.0 / k) * (xs * e);
  }
  for (int s = 0; s < squarings; ++s) e = e * e;
  return e;
}

SquareMatrix spd_log(const SquareMatrix& p) {
  return spectral_map(checked_spd_eigen(p), [](double l) { return std::log(l); });
}

SquareMatrix spd_sqrt(const SquareMatrix& p) {
  return spectral_map(checked_spd_eigen(p), [](double l) { return std::sqrt(l); });
}

SquareMatrix rotation_log(const SquareMatrix& r) {
  const std::size_t n = r.dim();
  const SymEigen e = sym_eigen(r.sym());
  const SquareMatrix k = r.skew();

  // Eigenvalues of sym R are the cosines of the rotation angles.
  constexpr double kHalfTurnSlack = 1e-12;
  const SquareMatrix f = spectral_map(e, [](double c) {
    c = std::clamp(c, -1.0, 1.0);
    if (c < -1.0 + kHalfTurnSlack) return 0.0;
    const double one_minus = 1.0 - c;
    if (one_minus < 1e-8) return 1.0 + one_minus / 3.0;  // theta/sin(theta) ~ 1 + theta^2/6
    return std::acos(c) / std::sqrt(1.0 - c * c);
  });
  SquareMatrix w = (f * k).skew();

  std::vector<std::size_t> half_turn;
  for (std::size_t i = 0; i < n; ++i)
    if (e.lambda[i] < -1.0 + kHalfTurnSlack) half_turn.push_back(i);
  for (std::size_t p = 0; p + 1 < half_turn.size(); p += 2) {
    const std::size_t a = half_turn[p];
    const std::size_t b = half_turn[p + 1];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        w(i, j) += std::numbers::pi * (e.Q(i, b) * e.Q(j, a) - e.Q(i, a) * e.Q(j, b));
  }
  return w;
}

SquareMatrix orthonormalize(const SquareMatrix& a, int det_sign) {
  const std::size_t n = a.dim();
  SquareMatrix q = a;
  for (std::size_t k = 0; k < n; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += q(i, j) * q(i, k);
        for (std::size_t i = 0; i < n; ++i) q(i, k) -= d * q(i, j);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, k) * q(i, k);
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw Error(ErrorCode::SingularInput, "orthonormalize: rank-deficient input");
    for (std::size_t i = 0; i < n; ++i) q(i, k) /= norm;
  }
  if ((det(q) < 0.0) != (det_sign < 0)) {
    for (std::size_t i = 0; i < n; ++i) q(i, n - 1) = -q(i, n - 1);
  }
  return q;
}

}  // namespace strainlab
