#include "strainlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "strainlab/decompositions.hpp"
#include "strainlab/geodesy.hpp"
#include "strainlab/matrix_io.hpp"
#include "strainlab/oracle.hpp"
#include "strainlab/strain.hpp"
#include "strainlab/verify.hpp"

namespace strainlab {
namespace {

constexpr std::uint64_t kDefaultSeed = 20240917;

struct MetricFlags {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;

  void attach(CLI::App* app) {
    app->add_option("--alpha", alpha, "trace weight alpha >= 0");
    app->add_option("--beta", beta, "symmetric-part weight beta > 0");
    app->add_option("--gamma", gamma, "skew-part weight gamma < 0");
  }
  bool any() const { return alpha || beta || gamma; }
  bool all() const { return alpha && beta && gamma; }
  /// Flags if all given, (0, 1, -1) if none given.
  IsotropicMetric or_default() const {
    if (!any()) return IsotropicMetric(0.0, 1.0, -1.0);
    if (!all()) throw Error(ErrorCode::InvalidMetric, "--alpha, --beta and --gamma go together");
    return IsotropicMetric(*alpha, *beta, *gamma);
  }
};

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<double> flatten(const SquareMatrix& m) { return {m.data().begin(), m.data().end()}; }

struct ComputeArgs {
  std::string measure;
  MetricFlags metric;
  std::string input;
  std::string format = "json";
  std::string output;
};

int cmd_compute(const ComputeArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto kind = parse_strain_kind(a.measure);
  if (!kind) {
    err << "compute: unknown --measure '" << a.measure << "'\n";
    return kExitUsage;
  }
  std::optional<IsotropicMetric> metric;
  if (strain_kind_needs_metric(*kind)) {
    if (!a.metric.all()) {
      err << "compute: --measure " << a.measure << " needs --alpha, --beta and --gamma\n";
      return kExitUsage;
    }
    try {
      metric.emplace(*a.metric.alpha, *a.metric.beta, *a.metric.gamma);
    } catch (const Error& e) {
      err << "compute: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  std::vector<NamedMatrix> inputs;
  try {
    inputs = parse_matrices(read_source(a.input, in));
  } catch (const Error& e) {
    err << "compute: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<StrainRecord> records;
  bool any_error = false;
  for (const NamedMatrix& nm : inputs) {
    StrainRecord r;
    r.input_id = nm.id;
    r.kind = a.measure;
    if (metric) {
      r.alpha = metric->alpha();
      r.beta = metric->beta();
      r.gamma = metric->gamma();
    }
    try {
      const StrainReport rep = compute_strain(*kind, nm.matrix, metric);
      r.value = rep.value;
      r.minimizer = flatten(rep.minimizer);
      r.status = "ok";
    } catch (const Error& e) {
      r.status = "error:" + std::string(error_code_name(e.code()));
      any_error = true;
    }
    records.push_back(std::move(r));
  }

  const std::string text = a.format == "csv" ? records_to_csv(records) : records_to_json(records);
  if (a.output.empty()) {
    out << text;
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) {
      err << "compute: cannot write '" << a.output << "'\n";
      return kExitUsage;
    }
    f << text;
  }
  return any_error ? kExitRecordErrors : kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::optional<std::uint64_t> seed;
  bool quick = false;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("STRAINLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      // Unparseable override: fall back to the built-in seed.
    }
  }
  return kDefaultSeed;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (!is_known_suite(a.suite)) {
    err << "verify: unknown suite '" << a.suite << "'\n"
        << "usage: strainlab verify [--suite all|metric|geodesy|strain|oracle] [--seed N] [--quick]\n";
    return kExitUsage;
  }
  VerifyOptions opts{a.suite, a.seed.value_or(default_seed()), a.quick};
  const auto results = run_verification(opts);
  out << verification_table(results) << verification_json(opts, results);
  for (const auto& r : results)
    if (!r.passed) return kExitPropertyFailed;
  return kExitOk;
}

struct DemoArgs {
  std::string name;
  std::size_t n = 2;
  int kmax = 20;
  std::string measure = "geodesic";
  double tmin = 1e-4;
  double tmax = 1e4;
  int points = 25;
  MetricFlags metric;
  std::string input;
  std::string velocity;
  int samples = 11;
};

int demo_biinvariance(const DemoArgs& a, std::ostream& out) {
  if (a.n < 2 || a.kmax < 0 || a.kmax > 60) throw Error(ErrorCode::InvalidArgument, "need --n >= 2 and 0 <= --kmax <= 60");
  const SquareMatrix base = unit_upper_bidiagonal(a.n);
  const double base_distance = frobenius_distance(base, SquareMatrix::identity(a.n));
  out << "k,frobenius_to_I,original_frobenius_to_I\n";
  for (int k = 0; k <= a.kmax; ++k) {
    out << k << ',' << format_double(biinvariance_counterexample(a.n, k).frobenius_to_I) << ','
        << format_double(base_distance) << '\n';
  }
  return kExitOk;
}

int demo_divergence(const DemoArgs& a, std::ostream& out) {
  const auto kind = parse_strain_kind(a.measure);
  if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown --measure '" + a.measure + "'");
  if (!(a.tmin > 0.0) || !(a.tmax >= a.tmin) || a.points < 1 || a.n < 1) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < --tmin <= --tmax, --points >= 1");
  }
  const IsotropicMetric m = a.metric.or_default();
  out << "t,strain\n";
  const double lo = std::log(a.tmin);
  const double hi = std::log(a.tmax);
  for (int i = 0; i < a.points; ++i) {
    const double t = a.points == 1 ? a.tmin : std::exp(lo + (hi - lo) * i / (a.points - 1));
    std::vector<double> d(a.n, 1.0);
    d[0] = t;
    out << format_double(t) << ','
        << format_double(compute_strain(*kind, SquareMatrix::diagonal(d), m).value) << '\n';
  }
  return kExitOk;
}

int demo_geodesic_trace(const DemoArgs& a, std::istream& in, std::ostream& out) {
  if (a.input.empty()) throw Error(ErrorCode::InvalidArgument, "geodesic-trace needs --input");
  if (a.samples < 2) throw Error(ErrorCode::InvalidArgument, "--samples must be >= 2");
  const IsotropicMetric m = a.metric.or_default();
  const SquareMatrix matrix = parse_matrices(read_source(a.input, in)).front().matrix;

  std::optional<GeodesicSpec> spec;
  if (a.velocity.empty()) {
    // Minimizing geodesic from the closest rotation O to A = O P: O exp(t log P).
    const PolarDecomposition pd = polar(matrix);
    spec.emplace(GeodesicSpec{pd.O, spd_log(pd.P), m});
  } else {
    spec.emplace(GeodesicSpec{matrix, parse_matrices(read_source(a.velocity, in)).front().matrix, m});
  }
  spec->validate();

  const std::size_t n = matrix.dim();
  out << 't';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out << ",m" << i << j;
  out << '\n';
  for (int k = 0; k < a.samples; ++k) {
    const double t = static_cast<double>(k) / (a.samples - 1);
    const SquareMatrix g = geodesic_eval(*spec, t);
    out << format_double(t);
    for (double v : g.data()) out << ',' << format_double(v);
    out << '\n';
  }
  return kExitOk;
}

int cmd_demo(const DemoArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (a.name == "bi-invariance") return demo_biinvariance(a, out);
    if (a.name == "divergence") return demo_divergence(a, out);
    if (a.name == "geodesic-trace") return demo_geodesic_trace(a, in, out);
  } catch (const Error& e) {
    err << "demo " << a.name << ": " << e.what() << "\n";
    return kExitUsage;
  }
  err << "demo: unknown demo '" << a.name << "'\n"
      << "usage: strainlab demo bi-invariance|divergence|geodesic-trace [options]\n";
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Strain measures: distances of invertible matrices from SO(n)", "strainlab"};
  app.require_subcommand(1);

  ComputeArgs compute;
  CLI::App* c = app.add_subcommand("compute", "strain of every matrix in a file");
  c->add_option("--measure", compute.measure,
                "geodesic|euclidean-ext|euclidean-int|sym-euclidean|sym-geodesic-dist|sym-geodesic-metric")
      ->required();
  compute.metric.attach(c);
  c->add_option("--input", compute.input, "matrix file (JSON or CSV), '-' for stdin")->required();
  c->add_option("--format", compute.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  c->add_option("--output", compute.output, "output file (default stdout)");

  VerifyArgs verify;
  CLI::App* v = app.add_subcommand("verify", "run the property suites");
  v->add_option("--suite", verify.suite, "all|metric|geodesy|strain|oracle");
  v->add_option("--seed", verify.seed, "base seed (default: $STRAINLAB_SEED or built-in)");
  v->add_flag("--quick", verify.quick, "reduced trial counts");

  DemoArgs demo;
  CLI::App* d = app.add_subcommand("demo", "emit a data table");
  d->add_option("name", demo.name, "bi-invariance|divergence|geodesic-trace")->required();
  d->add_option("--n", demo.n, "dimension");
  d->add_option("--kmax", demo.kmax, "bi-invariance: largest conjugation power");
  d->add_option("--measure", demo.measure, "divergence: strain measure");
  d->add_option("--tmin", demo.tmin, "divergence: smallest stretch");
  d->add_option("--tmax", demo.tmax, "divergence: largest stretch");
  d->add_option("--points", demo.points, "divergence: number of log-spaced samples");
  demo.metric.attach(d);
  d->add_option("--input", demo.input, "geodesic-trace: matrix file");
  d->add_option("--velocity", demo.velocity, "geodesic-trace: body velocity file (optional)");
  d->add_option("--samples", demo.samples, "geodesic-trace: number of samples on [0, 1]");

  std::vector<const char*> argv{"strainlab"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (c->parsed()) return cmd_compute(compute, in, out, err);
  if (v->parsed()) return cmd_verify(verify, out, err);
  return cmd_demo(demo, in, out, err);
}

}  // namespace strainlab
