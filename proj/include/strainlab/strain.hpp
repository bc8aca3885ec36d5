#pragma once

#include <optional>
#include <string_view>

#include "strainlab/matrix.hpp"
#include "strainlab/metric.hpp"

namespace strainlab {

enum class StrainKind {
  Geodesic,
  EuclideanExtrinsic,
  EuclideanIntrinsic,
  SymmetrizedEuclidean,
  SymmetrizedGeodesicDistance,
  SymmetrizedGeodesicMetric,
};

/// CLI spelling: geodesic, euclidean-ext, euclidean-int, sym-euclidean,
/// sym-geodesic-dist, sym-geodesic-metric.
std::string_view strain_kind_name(StrainKind kind) noexcept;
std::optional<StrainKind> parse_strain_kind(std::string_view name) noexcept;
bool strain_kind_needs_metric(StrainKind kind) noexcept;

/// Distance of A from SO(n) and the rotation attaining it.
struct StrainReport {
  StrainKind kind;
  double value;
  SquareMatrix minimizer;
  std::optional<IsotropicMetric> metric_params;
};

/**
 * sqrt(alpha (sum log sigma_i)^2 + beta sum (log sigma_i)^2), minimized by the
 * orthogonal polar factor.
 *
 * gamma does not enter the value: the minimizing velocity is symmetric, so
 * the skew term of g_I vanishes along it. The metric is still validated.
 */
StrainReport geodesic_strain(const IsotropicMetric& m, const SquareMatrix& a);

/// ||sqrt(A^T A) - I||_F.
StrainReport euclidean_strain_ext(const SquareMatrix& a);

/// Intrinsic Euclidean distance to SO(n); it coincides with the extrinsic one
/// for every A in GL(n)+, so this shares the extrinsic computation.
StrainReport euclidean_strain_int(const SquareMatrix& a);

/// Extrinsic Euclidean strain of A plus that of A^-1.
StrainReport symmetrized_euclidean_strain(const SquareMatrix& a);

/// Geodesic strain under the distance d(A, B) + d(A^-1, B^-1): twice geodesic_strain.
StrainReport symmetrized_geodesic_distance_strain(const IsotropicMetric& m, const SquareMatrix& a);

/// Geodesic strain under the metric g + i*g: sqrt(2) times geodesic_strain.
StrainReport symmetrized_geodesic_metric_strain(const IsotropicMetric& m, const SquareMatrix& a);

/// Orthogonal polar factor of A.
SquareMatrix closest_rotation(const SquareMatrix& a);

/// Dispatch by kind. Throws InvalidMetric if a geodesic kind gets no metric.
StrainReport compute_strain(StrainKind kind, const SquareMatrix& a,
                            const std::optional<IsotropicMetric>& m);

}  // namespace strainlab
