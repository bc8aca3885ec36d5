#include "strainlab/strain.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "strainlab/decompositions.hpp"

namespace strainlab {
namespace {

struct KindName {
  StrainKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 6> kKindNames{{
    {StrainKind::Geodesic, "geodesic"},
    {StrainKind::EuclideanExtrinsic, "euclidean-ext"},
    {StrainKind::EuclideanIntrinsic, "euclidean-int"},
    {StrainKind::SymmetrizedEuclidean, "sym-euclidean"},
    {StrainKind::SymmetrizedGeodesicDistance, "sym-geodesic-dist"},
    {StrainKind::SymmetrizedGeodesicMetric, "sym-geodesic-metric"},
}};

void require_gl_plus(const SquareMatrix& a) {
  if (!(det(a) > 0.0)) {
    // Singular inputs report as singular, not as a sign problem.
    svd_special(a);
    throw Error(ErrorCode::NegativeDeterminant, "strain requires det A > 0");
  }
}

StrainReport rescaled(StrainReport r, StrainKind kind, double factor) {
  r.kind = kind;
  r.value *= factor;
  return r;
}

}  // namespace

std::string_view strain_kind_name(StrainKind kind) noexcept {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

std::optional<StrainKind> parse_strain_kind(std::string_view name) noexcept {
  for (const auto& kn : kKindNames)
    if (kn.name == name) return kn.kind;
  return std::nullopt;
}

bool strain_kind_needs_metric(StrainKind kind) noexcept {
  return kind == StrainKind::Geodesic || kind == StrainKind::SymmetrizedGeodesicDistance ||
         kind == StrainKind::SymmetrizedGeodesicMetric;
}

StrainReport geodesic_strain(const IsotropicMetric& m, const SquareMatrix& a) {
  m.require_dimension(a.dim());
  require_gl_plus(a);
  const SvdSpecial s = svd_special(a);
  double log_sum = 0.0;
  double log_sq = 0.0;
  for (double sigma : s.sigma) {
    const double l = std::log(sigma);
    log_sum += l;
    log_sq += l * l;
  }
  const double value = std::sqrt(m.alpha() * log_sum * log_sum + m.beta() * log_sq);
  return StrainReport{StrainKind::Geodesic, value, s.U * s.V.transpose(), m};
}

StrainReport euclidean_strain_ext(const SquareMatrix& a) {
  require_gl_plus(a);
  PolarDecomposition pd = polar(a);
  const double value = frobenius_distance(pd.P, SquareMatrix::identity(a.dim()));
  return StrainReport{StrainKind::EuclideanExtrinsic, value, std::move(pd.O), std::nullopt};
}

StrainReport euclidean_strain_int(const SquareMatrix& a) {
  StrainReport r = euclidean_strain_ext(a);
  r.kind = StrainKind::EuclideanIntrinsic;
  return r;
}

StrainReport symmetrized_euclidean_strain(const SquareMatrix& a) {
  StrainReport r = euclidean_strain_ext(a);
  r.kind = StrainKind::SymmetrizedEuclidean;
  r.value += euclidean_strain_ext(inverse(a)).value;
  return r;
}

StrainReport symmetrized_geodesic_distance_strain(const IsotropicMetric& m, const SquareMatrix& a) {
  return rescaled(geodesic_strain(m, a), StrainKind::SymmetrizedGeodesicDistance, 2.0);
}

StrainReport symmetrized_geodesic_metric_strain(const IsotropicMetric& m, const SquareMatrix& a) {
  return rescaled(geodesic_strain(m, a), StrainKind::SymmetrizedGeodesicMetric,
                  std::numbers::sqrt2);
}

SquareMatrix closest_rotation(const SquareMatrix& a) {
  require_gl_plus(a);
  return polar(a).O;
}

StrainReport compute_strain(StrainKind kind, const SquareMatrix& a,
                            const std::optional<IsotropicMetric>& m) {
  if (strain_kind_needs_metric(kind) && !m) {
    throw Error(ErrorCode::InvalidMetric, "this strain measure needs alpha, beta and gamma");
  }
  switch (kind) {
    case StrainKind::Geodesic: return geodesic_strain(*m, a);
    case StrainKind::EuclideanExtrinsic: return euclidean_strain_ext(a);
    case StrainKind::EuclideanIntrinsic: return euclidean_strain_int(a);
    case StrainKind::SymmetrizedEuclidean: return symmetrized_euclidean_strain(a);
    case StrainKind::SymmetrizedGeodesicDistance: return symmetrized_geodesic_distance_strain(*m, a);
    case StrainKind::SymmetrizedGeodesicMetric: return symmetrized_geodesic_metric_strain(*m, a);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown strain kind");
}

}  // namespace strainlab
