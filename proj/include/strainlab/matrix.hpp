#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "strainlab/errors.hpp"

namespace strainlab {

/**
 * Dense n-by-n real matrix stored row-major.
 *
 * Carries group elements of GL(n) as well as tangent vectors. Factory
 * functions that accept external data reject non-finite entries; results of
 * arithmetic are not re-checked.
 */
class SquareMatrix {
 public:
  /// Zero matrix of dimension n (n >= 1).
  explicit SquareMatrix(std::size_t n);

  /// Row-major entries; entries.size() must equal n*n and all be finite.
  SquareMatrix(std::size_t n, std::vector<double> entries);

  static SquareMatrix identity(std::size_t n);
  static SquareMatrix zeros(std::size_t n) { return SquareMatrix(n); }
  static SquareMatrix diagonal(std::span<const double> d);
  static SquareMatrix diagonal(std::initializer_list<double> d);
  static SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return n_; }
  std::span<const double> data() const noexcept { return a_; }
  std::span<double> data() noexcept { return a_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  SquareMatrix transpose() const;
  double trace() const;
  double frobenius_norm() const;
  /// Largest absolute entry.
  double max_abs() const;
  bool is_finite() const;

  SquareMatrix sym() const;   // (X + X^T) / 2
  SquareMatrix skew() const;  // (X - X^T) / 2

  SquareMatrix& operator+=(const SquareMatrix& other);
  SquareMatrix& operator-=(const SquareMatrix& other);
  SquareMatrix& operator*=(double s);

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

SquareMatrix operator+(SquareMatrix lhs, const SquareMatrix& rhs);
SquareMatrix operator-(SquareMatrix lhs, const SquareMatrix& rhs);
SquareMatrix operator-(SquareMatrix m);
SquareMatrix operator*(double s, SquareMatrix m);
SquareMatrix operator*(SquareMatrix m, double s);
SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs);

inline SquareMatrix transpose(const SquareMatrix& m) { return m.transpose(); }
inline SquareMatrix add(const SquareMatrix& a, const SquareMatrix& b) { return a + b; }
inline SquareMatrix scale(double s, const SquareMatrix& a) { return s * a; }
inline SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b) { return a * b; }

/// tr(X^T Y).
double frobenius_ip(const SquareMatrix& x, const SquareMatrix& y);

/// LU with partial pivoting.
double det(const SquareMatrix& a);

/// Gauss-Jordan inverse. Throws SingularInput when |det A| <= 1e-12 * ||A||_F^n.
SquareMatrix inverse(const SquareMatrix& a);

/// [X, Y] = XY - YX.
SquareMatrix commutator(const SquareMatrix& x, const SquareMatrix& y);

/// ||X - Y||_F.
double frobenius_distance(const SquareMatrix& x, const SquareMatrix& y);

/// ||X - Y||_F / max(1, ||Y||_F).
double relative_error(const SquareMatrix& x, const SquareMatrix& y);

/// ||Q^T Q - I||_F.
double orthogonality_defect(const SquareMatrix& q);

void require_same_dim(const SquareMatrix& a, const SquareMatrix& b);

}  // namespace strainlab
