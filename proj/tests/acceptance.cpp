// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "strainlab/cli.hpp"
#include "strainlab/decompositions.hpp"
#include "strainlab/geodesy.hpp"
#include "strainlab/metric.hpp"
#include "strainlab/oracle.hpp"
#include "strainlab/random.hpp"
#include "strainlab/strain.hpp"

using namespace strainlab;

namespace {

constexpr std::uint64_t kSeed = 20240917;

// Pinned tolerances.
constexpr double kOracleGeodesicRel = 1e-2;
constexpr double kOracleBudgetSeconds = 120.0;
constexpr double kGridValueTol = 1e-5;
constexpr double kGridAngleTol = 1e-3;
constexpr double kSampledBeatTol = 1e-9;
constexpr double kRk4Tol = 1e-7;
constexpr double kOdeResidualTol = 1e-6;
constexpr double kBenchmarkDirectTol = 1e-9;
constexpr double kBenchmarkPathTol = 1e-4;
constexpr double kEuclideanOracleRel = 5e-3;
constexpr double kSymMetricOracleRel = 2e-2;
constexpr double kInvarianceRel = 1e-9;
constexpr double kOrthogonalityScaled = 1e-14;
constexpr double kCommutatorRel = 1e-10;
constexpr double kWitnessMargin = 0.1;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

double scaled_rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1.0); }

double angle_of(const SquareMatrix& r) { return std::atan2(r(1, 0), r(0, 0)); }

double angle_gap(double a, double b) { return std::abs(std::remainder(a - b, 2 * std::numbers::pi)); }

Verdict oracle_geodesic() {
  Rng rng(kSeed + 1);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int runs = 0;
  for (int i = 0; i < 20; ++i) {
    const SquareMatrix a = random_gl_plus(2, rng, 100.0);
    for (const IsotropicMetric& m : {IsotropicMetric(0, 1, -1), IsotropicMetric(1, 2, -1)}) {
      const double closed = geodesic_strain(m, a).value;
      const double oracle = intrinsic_distance_to_SOn(a, LeftInvariant{m}, PathOptimizerConfig{}).value;
      worst = std::max(worst, rel(oracle, closed));
      ++runs;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= kOracleGeodesicRel && secs < kOracleBudgetSeconds,
          std::to_string(runs) + " runs, worst rel " + num(worst) + " (tol " + num(kOracleGeodesicRel) +
              "), " + num(secs) + " s (budget " + num(kOracleBudgetSeconds) + " s)"};
}

Verdict grioli() {
  Rng rng(kSeed + 2);
  double worst_value = 0.0;
  double worst_angle = 0.0;
  for (int i = 0; i < 50; ++i) {
    const SquareMatrix a = random_gl_plus(2, rng, 100.0);
    RotationSampler grid(2, 0, GridAngle{1e-4});
    const auto best = min_over_rotations(a, RotationObjective::FrobeniusDistance, grid);
    worst_value = std::max(worst_value, std::abs(best.value - euclidean_strain_ext(a).value));
    worst_angle = std::max(worst_angle, angle_gap(angle_of(best.argmin), angle_of(closest_rotation(a))));
  }
  double worst_beat = -INFINITY;
  for (int i = 0; i < 5; ++i) {
    const SquareMatrix a = random_gl_plus(3, rng, 100.0);
    RotationSampler sampler(3, kSeed + 20 + i, UniformRandom{100000});
    const auto best = min_over_rotations(a, RotationObjective::FrobeniusDistance, sampler);
    worst_beat = std::max(worst_beat, frobenius_distance(a, closest_rotation(a)) - best.value);
  }
  return {worst_value <= kGridValueTol && worst_angle <= kGridAngleTol && worst_beat <= kSampledBeatTol,
          "n=2 worst value gap " + num(worst_value) + " (tol " + num(kGridValueTol) + "), angle gap " +
              num(worst_angle) + " (tol " + num(kGridAngleTol) + "); n=3 largest beat " + num(worst_beat) +
              " over 5 x 1e5 samples (tol " + num(kSampledBeatTol) + ")"};
}

IsotropicMetric random_metric(Rng& rng) {
  std::uniform_real_distribution<double> a(0.0, 1.0), b(0.5, 2.0), g(-2.0, -0.1);
  const double alpha = a(rng);
  const double beta = b(rng);
  return IsotropicMetric(alpha, beta, g(rng));
}

Verdict appendix_consistency() {
  Rng rng(kSeed + 3);
  double worst_rk4 = 0.0;
  double worst_residual = 0.0;
  const double h = 1e-5;
  for (std::size_t n : {2u, 3u}) {
    for (int i = 0; i < 20; ++i) {
      const IsotropicMetric m = random_metric(rng);
      const GeodesicSpec spec{random_gl_plus(n, rng, 10.0), random_gaussian(n, rng, 0.5), m};
      const SquareMatrix exact = geodesic_eval(spec, 1.0);
      worst_rk4 = std::max(worst_rk4, relative_error(geodesic_integrate(spec, 1.0, 2000), exact));
      const SquareMatrix fd = (1.0 / (2 * h)) * (ode_solution_X(m, spec.velocity, 0.5 + h) -
                                                 ode_solution_X(m, spec.velocity, 0.5 - h));
      worst_residual = std::max(
          worst_residual, frobenius_distance(fd, geodesic_ode_rhs(m, ode_solution_X(m, spec.velocity, 0.5))));
    }
  }
  return {worst_rk4 <= kRk4Tol && worst_residual <= kOdeResidualTol,
          "40 pairs, worst RK4 gap " + num(worst_rk4) + " (tol " + num(kRk4Tol) + "), ODE residual " +
              num(worst_residual) + " (tol " + num(kOdeResidualTol) + ")"};
}

Verdict benchmark_value() {
  const IsotropicMetric m(0, 1, -1);
  const double target = std::numbers::sqrt2 * std::log(2.0);
  const SquareMatrix a = SquareMatrix::diagonal({2.0, 0.5});
  const double direct = geodesic_strain(m, a).value;
  const GeodesicSpec spec{SquareMatrix::identity(2), spd_log(a), m};
  const double sampled = path_length(sample_geodesic(spec, 256, LeftInvariant{m}));
  return {std::abs(direct - target) <= kBenchmarkDirectTol && std::abs(sampled - target) <= kBenchmarkPathTol,
          "direct " + full(direct) + ", K=256 path " + full(sampled) + ", target " + full(target)};
}

Verdict euclidean_oracle() {
  double worst = 0.0;
  std::ostringstream os;
  for (const SquareMatrix& s : {SquareMatrix::diagonal({2.0, 0.5}), SquareMatrix::diagonal({3.0, 1.0}),
                                SquareMatrix::diagonal({5.0, 2.0, 0.5})}) {
    const double want = frobenius_distance(s, SquareMatrix::identity(s.dim()));
    const double got = intrinsic_distance_to_SOn(s, EuclideanFrobenius{}, PathOptimizerConfig{}).value;
    worst = std::max(worst, rel(got, want));
    os << full(got) << " vs " << full(want) << "; ";
  }
  return {worst <= kEuclideanOracleRel,
          os.str() + "worst rel " + num(worst) + " (tol " + num(kEuclideanOracleRel) + ")"};
}

Verdict symmetrization() {
  Rng rng(kSeed + 6);
  const IsotropicMetric m(0, 1, -1);
  bool exact_two = true;
  for (int i = 0; i < 100; ++i) {
    const SquareMatrix a = random_gl_plus(2 + i % 3, rng, 100.0);
    exact_two &= symmetrized_geodesic_distance_strain(m, a).value / geodesic_strain(m, a).value == 2.0;
  }
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const SquareMatrix a = random_gl_plus(2, rng, 100.0);
    const double want = std::numbers::sqrt2 * geodesic_strain(m, a).value;
    const double got =
        intrinsic_distance_to_SOn(a, SymmetrizedLeftInvariant{m}, PathOptimizerConfig{}).value;
    worst = std::max(worst, rel(got, want));
  }
  return {exact_two && worst <= kSymMetricOracleRel,
          std::string("distance ratio == 2 on 100 inputs: ") + (exact_two ? "yes" : "no") +
              "; metric oracle worst rel " + num(worst) + " (tol " + num(kSymMetricOracleRel) + ")"};
}

Verdict invariance_suite() {
  Rng rng(kSeed + 7);
  const int trials = 500;
  int failures = 0;
  double worst_bi = 0, worst_inv = 0, worst_orth = 0, worst_comm = 0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = 2 + t % 3;
    const IsotropicMetric m = random_metric(rng);
    const SquareMatrix a = random_gl_plus(n, rng, 100.0);
    const SquareMatrix ai = inverse(a);
    const SquareMatrix q1 = random_rotation(n, rng);
    const SquareMatrix q2 = random_rotation(n, rng);
    const SquareMatrix moved = q1 * a * q2;
    const std::vector<std::function<double(const SquareMatrix&)>> measures{
        [&](const SquareMatrix& x) { return geodesic_strain(m, x).value; },
        [&](const SquareMatrix& x) { return symmetrized_euclidean_strain(x).value; },
        [&](const SquareMatrix& x) { return symmetrized_geodesic_distance_strain(m, x).value; },
        [&](const SquareMatrix& x) { return symmetrized_geodesic_metric_strain(m, x).value; }};
    bool ok = true;
    for (const auto& f : measures) {
      const double v = f(a);
      const double bi = scaled_rel(f(moved), v);
      const double inv = scaled_rel(f(ai), v);
      worst_bi = std::max(worst_bi, bi);
      worst_inv = std::max(worst_inv, inv);
      ok &= bi <= kInvarianceRel && inv <= kInvarianceRel;
    }

    const SquareMatrix sy = random_symmetric(n, rng);
    const SquareMatrix sk = random_skew(n, rng);
    const double orth = std::abs(gI(m, sy, sk)) / (sy.frobenius_norm() * sk.frobenius_norm());
    worst_orth = std::max(worst_orth, orth);
    ok &= orth <= kOrthogonalityScaled;

    const SquareMatrix x = random_gaussian(n, rng);
    const SquareMatrix y = random_gaussian(n, rng);
    const SquareMatrix yx = commutator(y, x);
    const SquareMatrix xxt = commutator(x, x.transpose());
    const double lhs = gI(m, x, yx);
    const double rhs = m.kappa() * gI(m, xxt, y);
    const double scale = std::max({gI_norm(m, x) * gI_norm(m, yx),
                                   m.kappa() * gI_norm(m, xxt) * gI_norm(m, y), 1e-300});
    const double comm = std::abs(lhs - rhs) / scale;
    worst_comm = std::max(worst_comm, comm);
    ok &= comm <= kCommutatorRel;

    ok &= check_isotropy(m, 2, n, rng());
    failures += ok ? 0 : 1;
  }
  return {failures == 0,
          std::to_string(trials - failures) + "/" + std::to_string(trials) + " trials; worst bi-SO(n) " +
              num(worst_bi) + ", inverse " + num(worst_inv) + " (tol " + num(kInvarianceRel) +
              "), orthogonality " + num(worst_orth) + " (tol " + num(kOrthogonalityScaled) +
              "), commutator " + num(worst_comm) + " (tol " + num(kCommutatorRel) + ")"};
}

Verdict biinvariance_demo() {
  std::istringstream in;
  std::ostringstream out, err;
  if (run_cli({"demo", "bi-invariance", "--n", "2", "--kmax", "20"}, in, out, err) != kExitOk) {
    return {false, "demo exited with an error: " + err.str()};
  }
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  bool exact = true, decreasing = true, constant = true;
  double previous = INFINITY;
  while (std::getline(lines, line)) {
    int k = 0;
    double d = 0, d0 = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf", &k, &d, &d0) != 3) return {false, "bad row '" + line + "'"};
    exact &= d == std::ldexp(1.0, -k);
    decreasing &= d < previous;
    constant &= d0 == 1.0;
    previous = d;
    ++rows;
  }
  return {rows == 21 && exact && decreasing && constant,
          std::to_string(rows) + " rows k=0..20; equal 2^-k: " + (exact ? "yes" : "no") +
              ", strictly decreasing: " + (decreasing ? "yes" : "no") + ", d(A,I) = 1 throughout: " +
              (constant ? "yes" : "no")};
}

Verdict witnesses() {
  const double e3 = euclidean_strain_ext(SquareMatrix::diagonal({3.0, 1.0})).value;
  const double e13 = euclidean_strain_ext(SquareMatrix::diagonal({1.0 / 3, 1.0})).value;
  const SquareMatrix from = SquareMatrix::identity(2);
  const SquareMatrix to = SquareMatrix::diagonal({-1.0, -1.0});
  PathOptimizerConfig cfg;
  cfg.endpoint_free = false;
  const double length = shortest_path(from, to, EuclideanFrobenius{}, cfg).value;
  const double bound = frobenius_distance(from, to) + kWitnessMargin;
  return {e3 != e13 && length > bound,
          "ext(diag(3,1)) = " + full(e3) + " vs ext(diag(1/3,1)) = " + full(e13) +
              "; fixed-endpoint path I -> diag(-1,-1) length " + full(length) + " (needs > " + full(bound) +
              ")"};
}

// Same inequality on a pair whose straight segment crosses det = 0 transversally.
std::string transversal_witness_note() {
  const SquareMatrix from = SquareMatrix::identity(2);
  const SquareMatrix to = SquareMatrix::diagonal({-1.0, -4.0});
  PathOptimizerConfig cfg;
  cfg.endpoint_free = false;
  const double length = shortest_path(from, to, EuclideanFrobenius{}, cfg).value;
  return "note: I -> diag(-1,-4): path length " + full(length) + " vs ||I - B||_F + 0.1 = " +
         full(frobenius_distance(from, to) + kWitnessMargin);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"C1 closed form vs path oracle (geodesic)", oracle_geodesic},
      {"C2 closest rotation is the polar factor", grioli},
      {"C3 closed-form geodesic vs ODE", appendix_consistency},
      {"C4 benchmark sqrt(2) ln 2", benchmark_value},
      {"C5 Euclidean intrinsic distance", euclidean_oracle},
      {"C6 symmetrization scalings", symmetrization},
      {"C7 invariance suite", invariance_suite},
      {"C8 bi-invariance counterexample demo", biinvariance_demo},
      {"C9 witness inequalities", witnesses},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", transversal_witness_note().c_str());
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
