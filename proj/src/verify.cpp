#include "strainlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "strainlab/decompositions.hpp"
#include "strainlab/geodesy.hpp"
#include "strainlab/matrix_io.hpp"
#include "strainlab/metric.hpp"
#include "strainlab/oracle.hpp"
#include "strainlab/random.hpp"
#include "strainlab/strain.hpp"

namespace strainlab {
namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

using Property = std::function<Outcome(Rng&)>;

struct Suite {
  std::string name;
  std::vector<std::pair<std::string, Property>> properties;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Worst observed error against a tolerance.
struct Worst {
  double value = 0.0;
  void update(double v) { value = std::max(value, std::isnan(v) ? INFINITY : v); }
  Outcome against(double tol) const {
    return {value <= tol, "worst " + short_number(value) + " (tol " + short_number(tol) + ")"};
  }
};

IsotropicMetric random_metric(Rng& rng) {
  std::uniform_real_distribution<double> a(0.0, 1.0), b(0.5, 2.0), g(-2.0, -0.1);
  const double alpha = a(rng);
  const double beta = b(rng);
  return IsotropicMetric(alpha, beta, g(rng));
}

double rel_gap(double a, double b, double scale) {
  return std::abs(a - b) / std::max({std::abs(b), scale, 1e-300});
}

Suite metric_suite(int trials) {
  Suite s{"metric", {}};
  s.properties.emplace_back("sym/skew orthogonality", [trials](Rng& rng) {
    Worst w;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 4;
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix sy = random_symmetric(n, rng);
      const SquareMatrix sk = random_skew(n, rng);
      w.update(std::abs(gI(m, sy, sk)) / (sy.frobenius_norm() * sk.frobenius_norm()));
    }
    return w.against(1e-14);
  });
  s.properties.emplace_back("left invariance", [trials](Rng& rng) {
    Worst w;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 3;
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix b = random_gl_plus(n, rng, 100.0);
      const SquareMatrix x = random_gaussian(n, rng);
      const SquareMatrix y = random_gaussian(n, rng);
      const double expect = gI(m, x, y);
      w.update(rel_gap(g_at(LeftInvariant{m}, b, b * x, b * y), expect,
                       gI_norm(m, x) * gI_norm(m, y)));
    }
    return w.against(1e-10);
  });
  s.properties.emplace_back("right O(n) invariance", [trials](Rng& rng) {
    Worst w;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 3;
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix b = random_gl_plus(n, rng, 100.0);
      const SquareMatrix u = random_orthogonal(n, rng, t % 2 == 0 ? 1 : -1);
      const SquareMatrix x = random_gaussian(n, rng);
      const SquareMatrix y = random_gaussian(n, rng);
      for (const MetricKind& kind : {MetricKind{LeftInvariant{m}}, MetricKind{SymmetrizedLeftInvariant{m}}}) {
        const double expect = g_at(kind, b, x, y);
        const double scale = std::sqrt(g_at(kind, b, x, x) * g_at(kind, b, y, y));
        w.update(rel_gap(g_at(kind, b * u, x * u, y * u), expect, scale));
      }
    }
    return w.against(1e-10);
  });
  s.properties.emplace_back("commutator identity", [trials](Rng& rng) {
    Worst w;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 3;
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix x = random_gaussian(n, rng);
      const SquareMatrix y = random_gaussian(n, rng);
      const SquareMatrix yx = commutator(y, x);
      const SquareMatrix xxt = commutator(x, x.transpose());
      const double lhs = gI(m, x, yx);
      const double rhs = m.kappa() * gI(m, xxt, y);
      const double scale = std::max(gI_norm(m, x) * gI_norm(m, yx),
                                    std::abs(m.kappa()) * gI_norm(m, xxt) * gI_norm(m, y));
      w.update(rel_gap(lhs, rhs, scale));
    }
    return w.against(1e-10);
  });
  s.properties.emplace_back("positive definiteness", [trials](Rng& rng) {
    int failures = 0;
    const int count = std::max(trials, 1000);
    for (int t = 0; t < count; ++t) {
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix x = random_gaussian(2 + t % 4, rng);
      if (!(gI(m, x, x) > 0.0)) ++failures;
    }
    return Outcome{failures == 0, std::to_string(failures) + " of " + std::to_string(count) + " non-positive"};
  });
  s.properties.emplace_back("isotropy (both det signs)", [trials](Rng& rng) {
    for (std::size_t n = 2; n <= 4; ++n) {
      const IsotropicMetric m = random_metric(rng);
      if (!check_isotropy(m, trials, n, rng())) {
        return Outcome{false, "conjugation changed g_I at n = " + std::to_string(n)};
      }
    }
    return Outcome{true, std::to_string(trials) + " trials per n in 2..4"};
  });
  return s;
}

GeodesicSpec random_spec(Rng& rng, std::size_t n, bool identity_start) {
  return GeodesicSpec{identity_start ? SquareMatrix::identity(n) : random_gl_plus(n, rng, 10.0),
                      random_gaussian(n, rng, 0.5), random_metric(rng)};
}

Suite geodesy_suite(int trials) {
  Suite s{"geodesy", {}};
  const int heavy = std::max(4, trials / 25);
  s.properties.emplace_back("closed form vs RK4", [heavy](Rng& rng) {
    Worst w;
    for (int t = 0; t < heavy; ++t) {
      const GeodesicSpec spec = random_spec(rng, 2 + t % 2, false);
      for (double te : {0.5, 1.0}) {
        const SquareMatrix exact = geodesic_eval(spec, te);
        w.update(frobenius_distance(geodesic_integrate(spec, te, 2000), exact) /
                 std::max(1.0, exact.frobenius_norm()));
      }
    }
    return w.against(1e-7);
  });
  s.properties.emplace_back("body-velocity ODE residual", [trials](Rng& rng) {
    Worst w;
    const double h = 1e-5;
    for (int t = 0; t < trials; ++t) {
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix x0 = random_gaussian(2 + t % 3, rng, 0.5);
      const SquareMatrix fd =
          (1.0 / (2.0 * h)) * (ode_solution_X(m, x0, 0.3 + h) - ode_solution_X(m, x0, 0.3 - h));
      w.update(frobenius_distance(fd, geodesic_ode_rhs(m, ode_solution_X(m, x0, 0.3))));
    }
    return w.against(1e-6);
  });
  s.properties.emplace_back("left translation of geodesics", [trials](Rng& rng) {
    Worst w;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 3;
      GeodesicSpec spec = random_spec(rng, n, false);
      const SquareMatrix a = spec.start;
      const SquareMatrix at_a = geodesic_eval(spec, 0.7);
      spec.start = SquareMatrix::identity(n);
      w.update(frobenius_distance(at_a, a * geodesic_eval(spec, 0.7)) /
               std::max(1.0, at_a.frobenius_norm()));
    }
    return w.against(1e-14);
  });
  s.properties.emplace_back("constant speed", [heavy](Rng& rng) {
    Worst w;
    const double h = 1e-4;
    for (int t = 0; t < heavy; ++t) {
      const GeodesicSpec spec = random_spec(rng, 2 + t % 2, false);
      const MetricKind kind = LeftInvariant{spec.metric};
      std::vector<double> speeds;
      for (double tt = 0.0; tt <= 1.0 + 1e-12; tt += 0.25) {
        const SquareMatrix vel =
            (1.0 / (2.0 * h)) * (geodesic_eval(spec, tt + h) - geodesic_eval(spec, tt - h));
        speeds.push_back(g_at(kind, geodesic_eval(spec, tt), vel, vel));
      }
      const auto [lo, hi] = std::minmax_element(speeds.begin(), speeds.end());
      w.update((*hi - *lo) / *hi);
    }
    return w.against(1e-6);
  });
  s.properties.emplace_back("length refinement O(1/K^2)", [](Rng& rng) {
    // Sampled minimizing geodesic exp(t log S) of a random diagonal S.
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const SquareMatrix logs = SquareMatrix::diagonal({u(rng), u(rng), u(rng)});
    const IsotropicMetric m(0.0, 1.0, -1.0);
    const GeodesicSpec spec{SquareMatrix::identity(3), logs, m};
    const double exact = gI_norm(m, logs);
    double prev_err = INFINITY;
    std::ostringstream os;
    bool ok = true;
    for (int k = 4; k <= 128; k *= 2) {
      const double err = std::abs(path_length(sample_geodesic(spec, k, LeftInvariant{m})) - exact);
      if (std::isfinite(prev_err)) {
        const double ratio = prev_err / err;
        os << "K=" << k << " ratio " << format_double(ratio).substr(0, 6) << "; ";
        ok = ok && err < prev_err && ratio > 3.5 && ratio < 4.5;
      }
      prev_err = err;
    }
    return Outcome{ok, os.str()};
  });
  return s;
}

std::vector<StrainKind> all_kinds() {
  return {StrainKind::Geodesic,
          StrainKind::EuclideanExtrinsic,
          StrainKind::EuclideanIntrinsic,
          StrainKind::SymmetrizedEuclidean,
          StrainKind::SymmetrizedGeodesicDistance,
          StrainKind::SymmetrizedGeodesicMetric};
}

Suite strain_suite(int trials) {
  Suite s{"strain", {}};
  s.properties.emplace_back("bi-SO(n) invariance", [trials](Rng& rng) {
    Worst w;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 3;
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix a = random_gl_plus(n, rng, 100.0);
      const SquareMatrix u = random_rotation(n, rng);
      const SquareMatrix v = random_rotation(n, rng);
      for (StrainKind kind : all_kinds()) {
        const StrainReport base = compute_strain(kind, a, m);
        const StrainReport moved = compute_strain(kind, u * a * v.transpose(), m);
        w.update(rel_gap(moved.value, base.value, 1.0));
        w.update(frobenius_distance(moved.minimizer, u * base.minimizer * v.transpose()));
      }
    }
    return w.against(1e-9);
  });
  s.properties.emplace_back("inverse invariance", [trials](Rng& rng) {
    Worst w;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 3;
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix a = random_gl_plus(n, rng, 100.0);
      const SquareMatrix a_inv = inverse(a);
      for (StrainKind kind : {StrainKind::Geodesic, StrainKind::SymmetrizedGeodesicDistance,
                              StrainKind::SymmetrizedGeodesicMetric, StrainKind::SymmetrizedEuclidean}) {
        const StrainReport fwd = compute_strain(kind, a, m);
        const StrainReport inv = compute_strain(kind, a_inv, m);
        w.update(std::abs(fwd.value - inv.value) / (1.0 + fwd.value));
        w.update(frobenius_distance(inv.minimizer, fwd.minimizer.transpose()));
      }
    }
    return w.against(1e-9);
  });
  s.properties.emplace_back("euclidean strain is not inverse-invariant", [](Rng&) {
    const double fwd = euclidean_strain_ext(SquareMatrix::diagonal({3.0, 1.0})).value;
    const double inv = euclidean_strain_ext(SquareMatrix::diagonal({1.0 / 3.0, 1.0})).value;
    return Outcome{std::abs(fwd - inv) > 0.1,
                   "diag(3,1): " + format_double(fwd) + ", diag(1/3,1): " + format_double(inv)};
  });
  s.properties.emplace_back("zero iff rotation", [trials](Rng& rng) {
    int bad = 0;
    const IsotropicMetric m(0.0, 1.0, -1.0);
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 3;
      SquareMatrix a = random_rotation(n, rng);
      if (t % 2 == 1) a = a * mat_exp(1e-6 * random_symmetric(n, rng));
      const bool is_rotation =
          frobenius_distance(a.transpose() * a, SquareMatrix::identity(n)) < 1e-8 && det(a) > 0.0;
      for (StrainKind kind : all_kinds()) {
        if ((compute_strain(kind, a, m).value < 1e-10) != is_rotation) ++bad;
      }
    }
    return Outcome{bad == 0, std::to_string(bad) + " mismatches"};
  });
  s.properties.emplace_back("geodesic strain diverges at both ends", [](Rng&) {
    const IsotropicMetric m(0.0, 1.0, -1.0);
    const double lo = geodesic_strain(m, SquareMatrix::diagonal({1e-6, 1.0, 1.0})).value;
    const double hi = geodesic_strain(m, SquareMatrix::diagonal({1e6, 1.0, 1.0})).value;
    return Outcome{lo > 10.0 && hi > 10.0, "t=1e-6: " + format_double(lo) + ", t=1e6: " + format_double(hi)};
  });
  s.properties.emplace_back("sigma formula equals ||log sqrt(A^T A)||", [trials](Rng& rng) {
    Worst w;
    for (int t = 0; t < trials; ++t) {
      const std::size_t n = 2 + t % 3;
      const IsotropicMetric m = random_metric(rng);
      const SquareMatrix a = random_gl_plus(n, rng, 100.0);
      const double via_log = gI_norm(m, spd_log(polar(a).P));
      w.update(rel_gap(geodesic_strain(m, a).value, via_log, 0.0));
    }
    return w.against(1e-9);
  });
  return s;
}

Suite oracle_suite(bool quick) {
  Suite s{"oracle", {}};
  s.properties.emplace_back("Grioli: SO(2) grid search", [quick](Rng& rng) {
    Worst value_gap;
    Worst argmin_gap;
    for (int t = 0; t < (quick ? 5 : 50); ++t) {
      const SquareMatrix a = random_gl_plus(2, rng, 100.0);
      RotationSampler grid(2, 0, GridAngle{1e-4});
      const RotationSearchResult r = min_over_rotations(a, RotationObjective::FrobeniusDistance, grid);
      value_gap.update(std::abs(r.value - euclidean_strain_ext(a).value));
      argmin_gap.update(frobenius_distance(r.argmin, closest_rotation(a)));
    }
    const Outcome v = value_gap.against(1e-5);
    const Outcome g = argmin_gap.against(1e-3);
    return Outcome{v.passed && g.passed, "value " + v.detail + "; argmin " + g.detail};
  });
  s.properties.emplace_back("Grioli: SO(3) random sampling", [quick](Rng& rng) {
    const SquareMatrix a = random_gl_plus(3, rng, 100.0);
    RotationSampler sampler(3, rng(), UniformRandom{quick ? 10000u : 100000u});
    const RotationSearchResult r = min_over_rotations(a, RotationObjective::FrobeniusDistance, sampler);
    const double polar_value = frobenius_distance(a, closest_rotation(a));
    return Outcome{r.value >= polar_value - 1e-9,
                   "best sample " + format_double(r.value) + " vs polar " + format_double(polar_value)};
  });
  s.properties.emplace_back("geodesic strain vs path optimizer", [quick](Rng& rng) {
    Worst w;
    for (int t = 0; t < (quick ? 2 : 20); ++t) {
      const IsotropicMetric m = t % 2 == 0 ? IsotropicMetric(0.0, 1.0, -1.0) : IsotropicMetric(1.0, 2.0, -1.0);
      const SquareMatrix a = random_gl_plus(2, rng, 100.0);
      const double closed = geodesic_strain(m, a).value;
      const double oracle = intrinsic_distance_to_SOn(a, LeftInvariant{m}, {}).value;
      w.update(std::abs(oracle - closed) / closed);
    }
    return w.against(0.01);
  });
  s.properties.emplace_back("symmetrized metric scales by sqrt(2)", [quick](Rng& rng) {
    Worst w;
    const IsotropicMetric m(0.0, 1.0, -1.0);
    for (int t = 0; t < (quick ? 1 : 5); ++t) {
      const SquareMatrix a = random_gl_plus(2, rng, 100.0);
      const double closed = std::numbers::sqrt2 * geodesic_strain(m, a).value;
      const double oracle = intrinsic_distance_to_SOn(a, SymmetrizedLeftInvariant{m}, {}).value;
      w.update(std::abs(oracle - closed) / closed);
    }
    return w.against(0.02);
  });
  s.properties.emplace_back("intrinsic > extrinsic across GL(n)-", [](Rng&) {
    // The segment from I to diag(-1,-4) has det < 0 on (0.2, 0.5).
    const SquareMatrix a = SquareMatrix::identity(2);
    const SquareMatrix b = SquareMatrix::diagonal({-1.0, -4.0});
    PathOptimizerConfig cfg;
    cfg.endpoint_free = false;
    const double ext = frobenius_distance(a, b);
    const double in = shortest_path(a, b, EuclideanFrobenius{}, cfg).value;
    return Outcome{segment_exits_glnplus(a, b) && in > ext + 0.1,
                   "intrinsic " + format_double(in) + " vs extrinsic " + format_double(ext)};
  });
  s.properties.emplace_back("sampler output lies in SO(n)", [quick](Rng& rng) {
    Worst w;
    std::vector<RotationSampler> samplers;
    samplers.emplace_back(2, rng(), GridAngle{quick ? 1e-2 : 1e-3});
    samplers.emplace_back(3, rng(), AxisAngleGrid{quick ? 9 : 17});
    for (std::size_t n = 2; n <= 5; ++n) samplers.emplace_back(n, rng(), UniformRandom{quick ? 200u : 2000u});
    for (auto& sampler : samplers) {
      while (auto q = sampler.next()) {
        w.update(orthogonality_defect(*q));
        w.update(std::abs(det(*q) - 1.0));
      }
    }
    return w.against(1e-12);
  });
  s.properties.emplace_back("bi-invariance counterexample halves per step", [](Rng&) {
    for (std::size_t n = 2; n <= 4; ++n) {
      for (int k = 0; k < 40; ++k) {
        const double d0 = biinvariance_counterexample(n, k).frobenius_to_I;
        const double d1 = biinvariance_counterexample(n, k + 1).frobenius_to_I;
        if (d1 != 0.5 * d0) return Outcome{false, "n=" + std::to_string(n) + " k=" + std::to_string(k)};
      }
    }
    return Outcome{true, "exact halving for n in 2..4, k < 40"};
  });
  return s;
}

std::vector<Suite> suites_for(const VerifyOptions& o) {
  const int trials = o.quick ? 50 : 500;
  std::vector<Suite> all;
  if (o.suite == "all" || o.suite == "metric") all.push_back(metric_suite(trials));
  if (o.suite == "all" || o.suite == "geodesy") all.push_back(geodesy_suite(trials));
  if (o.suite == "all" || o.suite == "strain") all.push_back(strain_suite(trials));
  if (o.suite == "all" || o.suite == "oracle") all.push_back(oracle_suite(o.quick));
  return all;
}

}  // namespace

bool is_known_suite(std::string_view name) noexcept {
  return name == "all" || name == "metric" || name == "geodesy" || name == "strain" ||
         name == "oracle";
}

std::vector<PropertyResult> run_verification(const VerifyOptions& options) {
  if (!is_known_suite(options.suite)) {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + options.suite + "'");
  }
  std::vector<PropertyResult> results;
  for (const Suite& suite : suites_for(options)) {
    for (const auto& [name, property] : suite.properties) {
      // Keyed by name, so a suite gives the same draws alone or within "all".
      Rng rng(options.seed ^ fnv1a(suite.name + "/" + name));
      const auto start = std::chrono::steady_clock::now();
      Outcome outcome;
      try {
        outcome = property(rng);
      } catch (const std::exception& e) {
        outcome = {false, std::string("threw: ") + e.what()};
      }
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      results.push_back({suite.name, name, outcome.passed, outcome.detail, secs});
    }
  }
  return results;
}

std::string verification_table(const std::vector<PropertyResult>& results) {
  std::ostringstream os;
  std::size_t width = 8;
  for (const auto& r : results) width = std::max(width, r.name.size());
  int passed = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    os << (r.passed ? "PASS  " : "FAIL  ");
    os << r.suite << std::string(9 - std::min<std::size_t>(8, r.suite.size()), ' ');
    os << r.name << std::string(width + 2 - r.name.size(), ' ') << r.detail << '\n';
  }
  os << passed << "/" << results.size() << " properties passed\n";
  return os.str();
}

std::string verification_json(const VerifyOptions& options,
                               const std::vector<PropertyResult>& results) {
  nlohmann::json j;
  j["suite"] = options.suite;
  j["seed"] = options.seed;
  j["quick"] = options.quick;
  int passed = 0;
  j["results"] = nlohmann::json::array();
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    j["results"].push_back({{"suite", r.suite},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"detail", r.detail},
                            {"seconds", r.seconds}});
  }
  j["passed"] = passed;
  j["failed"] = static_cast<int>(results.size()) - passed;
  return j.dump() + "\n";
}

}  // namespace strainlab
