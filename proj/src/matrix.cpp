#include "strainlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace strainlab {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::NonFinite: return "non_finite";
    case ErrorCode::NotSymmetric: return "not_symmetric";
    case ErrorCode::NotSPD: return "not_spd";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::SingularInput: return "singular_input";
    case ErrorCode::NegativeDeterminant: return "negative_determinant";
    case ErrorCode::InvalidMetric: return "invalid_metric";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::MidpointSingular: return "midpoint_singular";
    case ErrorCode::UnsupportedDimension: return "unsupported_dimension";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::ParseError: return "parse_error";
  }
  return "unknown";
}

SquareMatrix::SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), a_(std::move(entries)) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
  if (a_.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(n * n) + " entries, got " + std::to_string(a_.size()));
  }
  if (!is_finite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::diagonal(std::span<const double> d) {
  SquareMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) throw Error(ErrorCode::NonFinite, "non-finite diagonal entry");
    m(i, i) = d[i];
  }
  return m;
}

SquareMatrix SquareMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

SquareMatrix SquareMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row of length " + std::to_string(r.size()) + " in a " + std::to_string(n) +
                      "-row matrix");
    }
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return SquareMatrix(n, std::move(entries));
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double SquareMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double SquareMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double SquareMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool SquareMatrix::is_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

SquareMatrix SquareMatrix::sym() const {
  SquareMatrix s(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  return s;
}

SquareMatrix SquareMatrix::skew() const {
  SquareMatrix s(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s(i, j) = 0.5 * ((*this)(i, j) - (*this)(j, i));
  return s;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

SquareMatrix operator+(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs += rhs; }
SquareMatrix operator-(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs -= rhs; }
SquareMatrix operator-(SquareMatrix m) { return m *= -1.0; }
SquareMatrix operator*(double s, SquareMatrix m) { return m *= s; }
SquareMatrix operator*(SquareMatrix m, double s) { return m *= s; }

SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  SquareMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += a * rhs(k, j);
    }
  return r;
}

double frobenius_ip(const SquareMatrix& x, const SquareMatrix& y) {
  require_same_dim(x, y);
  const auto a = x.data();
  const auto b = y.data();
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double det(const SquareMatrix& a) {
  const std::size_t n = a.dim();
  SquareMatrix lu = a;
  double d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(lu(r, c)) > std::abs(lu(p, c))) p = r;
    if (lu(p, c) == 0.0) return 0.0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(p, j), lu(c, j));
      d = -d;
    }
    d *= lu(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = lu(r, c) / lu(c, c);
      for (std::size_t j = c + 1; j < n; ++j) lu(r, j) -= f * lu(c, j);
    }
  }
  return d;
}

SquareMatrix inverse(const SquareMatrix& a) {
  const std::size_t n = a.dim();
  const double scale = std::pow(a.frobenius_norm(), static_cast<double>(n));
  if (!(std::abs(det(a)) > 1e-12 * scale)) {
    throw Error(ErrorCode::SingularInput, "matrix is numerically singular");
  }
  SquareMatrix m = a;
  SquareMatrix inv = SquareMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(p, c))) p = r;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const double piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m(r, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

SquareMatrix commutator(const SquareMatrix& x, const SquareMatrix& y) { return x * y - y * x; }

double frobenius_distance(const SquareMatrix& x, const SquareMatrix& y) {
  return (x - y).frobenius_norm();
}

double relative_error(const SquareMatrix& x, const SquareMatrix& y) {
  return frobenius_distance(x, y) / std::max(1.0, y.frobenius_norm());
}

double orthogonality_defect(const SquareMatrix& q) {
  return frobenius_distance(q.transpose() * q, SquareMatrix::identity(q.dim()));
}

void require_same_dim(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "dimension mismatch: " + std::to_string(a.dim()) +
                                                  " vs " + std::to_string(b.dim()));
  }
}

}  // namespace strainlab
