#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ordered_beta/beta_eval.hpp"
#include "ordered_beta/distribution.hpp"
#include "ordered_beta/errors.hpp"
#include "ordered_beta/oracle.hpp"

namespace obeta::cli {
namespace {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

class UsageError : public Error {
 public:
  using Error::Error;
};

// Options shared by every leaf command.
struct Common {
  std::string a, b;
  std::string method = "chebyshev";
  int order = 64;
  std::string precision = "double";
  std::string format = "json";
  bool strict = false;
  bool timing = false;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(',', start);
    const std::string item =
        trim(std::string_view(text).substr(start, end == std::string::npos ? end : end - start));
    T value{};
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
    out.push_back(value);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

ParamVector params_of(const Common& c) {
  return ParamVector(parse_list<double>(c.a, "--a"), parse_list<double>(c.b, "--b"));
}

EvalSettings settings_of(const Common& c) {
  EvalSettings s;
  const auto method = parse_method(c.method);
  if (!method) throw UsageError("unknown method '" + c.method + "'");
  s.method = *method;
  s.order = c.order;
  const auto mode = parse_precision_mode(c.precision);
  if (!mode) throw UsageError("unknown precision '" + c.precision + "'");
  s.precision = *mode == PrecisionMode::extended ? PrecisionConfig::extended()
                                                 : PrecisionConfig::machine();
  return s;
}

void add_common(CLI::App* app, Common& c, bool with_params = true) {
  // The environment sets the default; an invalid value is rejected later by settings_of.
  if (const char* env = std::getenv("ORDERED_BETA_PRECISION"); env && *env) c.precision = env;
  if (with_params) {
    app->add_option("--a", c.a, "comma-separated a_1..a_n")->required();
    app->add_option("--b", c.b, "comma-separated b_1..b_n")->required();
  }
  app->add_option("--method", c.method, "taylor or chebyshev")
      ->check(CLI::IsMember({"taylor", "chebyshev", "cheb"}));
  app->add_option("--n", c.order, "truncation order N")->check(CLI::NonNegativeNumber);
  app->add_option(
         "--precision", c.precision,
         "double or extended (taylor only); default from ORDERED_BETA_PRECISION")
      ->check(CLI::IsMember({"double", "machine", "machine-double", "extended"}));
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_flag("--strict", c.strict, "exit 4 on a precision warning");
  app->add_flag("--timing", c.timing, "include wall time (breaks byte-identical output)");
}

json base_record(const std::string& command, const Common& c, const EvalSettings& s) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = command;
  r["method"] = std::string(to_string(s.method));
  r["N"] = s.order;
  r["precision"] = std::string(to_string(s.precision.mode));
  r["inputs"]["a"] = parse_list<double>(c.a, "--a");
  r["inputs"]["b"] = parse_list<double>(c.b, "--b");
  return r;
}

// Doubles that JSON cannot carry (infinities, NaN) become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int finish(json record, const Common& c, bool warning, double seconds) {
    if (c.timing) record["timing"]["seconds"] = seconds;
    out_ << record.dump(2) << '\n';
    return warn(c, warning);
  }

  int warn(const Common& c, bool warning) {
    if (!warning) return kOk;
    err_ << "warning: machine-double Taylor with parameters above the precision threshold; "
            "use --method chebyshev or --precision extended\n";
    return c.strict ? kPrecisionWarning : kOk;
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  Common c;
  double z = 1.0;
};

int cmd_eval(Runner& io, const EvalArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const auto s = settings_of(args.c);
  const GeneralizedBeta g(params_of(args.c), s);
  const auto r = g.evaluate(args.z);
  json rec = base_record("eval", args.c, s);
  rec["inputs"]["z"] = args.z;
  rec["value"] = r.value;
  rec["log_value"] = number(r.log_value);
  rec["scaled_value"] = r.scaled_value ? json(*r.scaled_value) : json(nullptr);
  rec["precision"] = std::string(to_string(r.precision.mode));
  rec["precision_warning"] = r.precision_warning;
  return io.finish(std::move(rec), args.c, r.precision_warning, seconds_since(start));
}

// --- curve -----------------------------------------------------------------

struct CurveArgs {
  Common c;
  double z = 1.0;
  int from = 4, to = 64, step = 1;
  std::optional<double> reference;
  int reference_order = 256;
};

int cmd_curve(Runner& io, const CurveArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  if (args.from < 0 || args.to < args.from || args.step < 1) {
    throw UsageError("curve needs 0 <= --from <= --to and --step >= 1");
  }
  const auto p = params_of(args.c);
  auto s = settings_of(args.c);

  double reference = 0.0;
  std::string source;
  if (args.reference) {
    reference = *args.reference;
    source = "given";
  } else {
    EvalSettings hi;
    hi.order = args.reference_order;
    reference = GeneralizedBeta(p, hi).value(args.z);
    source = "chebyshev N=" + std::to_string(args.reference_order);
  }

  struct Row {
    int n;
    double taylor, chebyshev;
  };
  std::vector<Row> rows;
  bool warning = false;
  for (int n = args.from; n <= args.to; n += args.step) {
    EvalSettings t = s, c = s;
    t.method = Method::taylor;
    t.order = n;
    c.method = Method::chebyshev;
    c.order = n;
    const GeneralizedBeta gt(p, t);
    warning |= gt.precision_warning();
    rows.push_back({n, std::abs(gt.value(args.z) - reference),
                    std::abs(GeneralizedBeta(p, c).value(args.z) - reference)});
  }

  if (args.c.format == "csv") {
    io.out() << "N,err_taylor,err_chebyshev\n";
    for (const auto& r : rows) {
      io.out() << r.n << ',' << csv_number(r.taylor) << ',' << csv_number(r.chebyshev) << '\n';
    }
    return io.warn(args.c, warning);
  }
  json rec = base_record("curve", args.c, s);
  rec.erase("method");
  rec.erase("N");
  rec["inputs"]["z"] = args.z;
  rec["inputs"]["from"] = args.from;
  rec["inputs"]["to"] = args.to;
  rec["inputs"]["step"] = args.step;
  rec["reference"] = reference;
  rec["reference_source"] = source;
  rec["precision_warning"] = warning;
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"N", r.n}, {"err_taylor", r.taylor}, {"err_chebyshev", r.chebyshev}});
  }
  rec["rows"] = std::move(table);
  return io.finish(std::move(rec), args.c, warning, seconds_since(start));
}

// --- dist ------------------------------------------------------------------

struct DistArgs {
  Common c;
  std::string x;       // pdf: point, or scalar with --k
  std::size_t k = 0;   // index for pdf/cdf/bracket
  double z = 0.5;
  std::string alpha, beta;         // moment
  std::string successes, failures; // posterior
  std::size_t count = 1000;        // sample
  std::uint64_t seed = 1;
  std::string sampler = "rejection";
};

json dist_record(const std::string& sub, const DistArgs& args, const OrderedBetaDist& d) {
  json rec = base_record("dist " + sub, args.c, d.settings());
  rec["normalizer"] = d.normalizer();
  return rec;
}

int cmd_dist_pdf(Runner& io, const DistArgs& args, bool has_k) {
  const auto start = std::chrono::steady_clock::now();
  const OrderedBetaDist d(params_of(args.c), settings_of(args.c));
  json rec = dist_record("pdf", args, d);
  if (has_k) {
    const auto xs = parse_list<double>(args.x, "--x");
    if (xs.size() != 1) throw UsageError("marginal density takes a single --x");
    rec["inputs"]["k"] = args.k;
    rec["inputs"]["x"] = xs[0];
    rec["pdf"] = d.marginal_pdf(args.k, xs[0]);
  } else {
    SimplexPoint point{parse_list<double>(args.x, "--x")};
    const double lp = d.log_pdf(point);
    rec["inputs"]["x"] = point.x;
    rec["log_pdf"] = number(lp);
    rec["pdf"] = std::exp(lp);
    rec["on_support"] = point.on_support();
  }
  return io.finish(std::move(rec), args.c, d.prefix_evaluator().precision_warning(),
                   seconds_since(start));
}

int cmd_dist_cdf(Runner& io, const DistArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const OrderedBetaDist d(params_of(args.c), settings_of(args.c));
  json rec = dist_record("cdf", args, d);
  rec["inputs"]["k"] = args.k;
  rec["inputs"]["z"] = args.z;
  rec["cdf"] = d.marginal_cdf(args.k, args.z);
  rec["survival"] = d.marginal_survival(args.k, args.z);
  return io.finish(std::move(rec), args.c, d.prefix_evaluator().precision_warning(),
                   seconds_since(start));
}

int cmd_dist_bracket(Runner& io, const DistArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const OrderedBetaDist d(params_of(args.c), settings_of(args.c));
  json rec = dist_record("bracket", args, d);
  rec["inputs"]["k"] = args.k;
  rec["inputs"]["z"] = args.z;
  rec["probability"] = d.bracket_prob(args.k, args.z);
  return io.finish(std::move(rec), args.c, d.prefix_evaluator().precision_warning(),
                   seconds_since(start));
}

int cmd_dist_moment(Runner& io, const DistArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const OrderedBetaDist d(params_of(args.c), settings_of(args.c));
  const auto alpha = parse_list<double>(args.alpha, "--alpha");
  const auto beta = parse_list<double>(args.beta, "--beta");
  json rec = dist_record("moment", args, d);
  rec["inputs"]["alpha"] = alpha;
  rec["inputs"]["beta"] = beta;
  rec["value"] = d.mixed_moment(alpha, beta);
  return io.finish(std::move(rec), args.c, d.prefix_evaluator().precision_warning(),
                   seconds_since(start));
}

int cmd_dist_posterior(Runner& io, const DistArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const OrderedBetaDist d(params_of(args.c), settings_of(args.c));
  ObservationBatch obs{parse_list<std::uint64_t>(args.successes, "--m"),
                       parse_list<std::uint64_t>(args.failures, "--k")};
  const auto post = d.posterior_update(obs);
  json rec = dist_record("posterior", args, post);
  rec["inputs"]["a"] = parse_list<double>(args.c.a, "--a");
  rec["inputs"]["b"] = parse_list<double>(args.c.b, "--b");
  rec["inputs"]["m"] = obs.successes;
  rec["inputs"]["k"] = obs.failures;
  rec["posterior"]["a"] = std::vector<double>(post.params().a().begin(), post.params().a().end());
  rec["posterior"]["b"] = std::vector<double>(post.params().b().begin(), post.params().b().end());
  return io.finish(std::move(rec), args.c, post.prefix_evaluator().precision_warning(),
                   seconds_since(start));
}

int cmd_dist_sample(Runner& io, const DistArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const auto method = parse_sampler(args.sampler);
  if (!method) throw UsageError("unknown sampler '" + args.sampler + "'");
  const OrderedBetaDist d(params_of(args.c), settings_of(args.c));
  const auto batch = d.sample(args.count, args.seed, *method);

  if (args.c.format == "csv") {
    for (std::size_t i = 0; i < d.size(); ++i) io.out() << (i ? ",x" : "x") << i + 1;
    io.out() << '\n';
    for (const auto& p : batch.points) {
      for (std::size_t i = 0; i < p.x.size(); ++i) io.out() << (i ? "," : "") << csv_number(p.x[i]);
      io.out() << '\n';
    }
    return io.warn(args.c, d.prefix_evaluator().precision_warning());
  }
  json rec = dist_record("sample", args, d);
  rec["inputs"]["count"] = args.count;
  rec["inputs"]["seed"] = args.seed;
  rec["inputs"]["sampler"] = args.sampler;
  json points = json::array();
  for (const auto& p : batch.points) points.push_back(p.x);
  rec["points"] = std::move(points);
  rec["acceptance_rate"] =
      batch.acceptance_rate ? json(*batch.acceptance_rate) : json(nullptr);
  rec["trials"] = batch.trials;
  rec["sweeps"] = batch.sweeps;
  return io.finish(std::move(rec), args.c, d.prefix_evaluator().precision_warning(),
                   seconds_since(start));
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  Common c;
  double z = 1.0;
  double tol = 1e-9;
  int nodes = 0;  // 0: 64 up to three parameters, 32 for four
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  double inject = 0.0;
};

int cmd_verify(Runner& io, const VerifyArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  if (!(args.tol > 0.0)) throw UsageError("--tol must be positive");
  const auto p = params_of(args.c);
  const auto s = settings_of(args.c);
  const GeneralizedBeta g(p, s);
  const double value = g.value(args.z) * (1.0 + args.inject);

  OracleEstimate oracle;
  double allowed = 0.0;
  if (p.size() <= 4) {
    const int nodes = args.nodes > 0 ? args.nodes : (p.size() <= 3 ? 64 : 32);
    oracle = oracle_quadrature(p, args.z, nodes);
    allowed = oracle.error;
  } else {
    oracle = oracle_montecarlo(p, args.z, args.samples, args.seed);
    allowed = 3.0 * oracle.error;
  }
  const double difference = std::abs(value - oracle.value);
  const bool oracle_ok = difference <= allowed + args.tol * std::abs(oracle.value);

  // The identities need an interior point; z = 0 or 1 falls back to 1/2.
  const double rz = args.z > 0.0 && args.z < 1.0 ? args.z : 0.5;
  const auto res = identity_residuals(p, rz, s);
  const bool residuals_ok = res.max() <= args.tol;

  json rec = base_record("verify", args.c, s);
  rec["inputs"]["z"] = args.z;
  rec["inputs"]["tol"] = args.tol;
  rec["value"] = value;
  rec["oracle"] = {{"kind", std::string(to_string(oracle.kind))},
                   {"value", oracle.value},
                   {"error", oracle.error}};
  rec["difference"] = difference;
  rec["residual_z"] = rz;
  rec["residuals"] = {{"symmetry", res.symmetry},
                      {"prefix_suffix_sum", res.prefix_suffix_sum},
                      {"alternating_sum", res.alternating_sum},
                      {"last_kernel_integral", res.last_kernel_integral},
                      {"marginal_kernel_integral", res.marginal_kernel_integral}};
  rec["oracle_ok"] = oracle_ok;
  rec["residuals_ok"] = residuals_ok;
  rec["passed"] = oracle_ok && residuals_ok;
  const int code = io.finish(std::move(rec), args.c, g.precision_warning(), seconds_since(start));
  if (!(oracle_ok && residuals_ok)) {
    io.err() << "verify: " << (oracle_ok ? "" : "oracle mismatch ")
             << (residuals_ok ? "" : "identity residual above tolerance") << '\n';
    return kVerifyFailed;
  }
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized incomplete beta function and the ordered beta distribution",
               "ordered-beta"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate B, log B and the scaled function");
  add_common(eval, eval_args.c);
  eval->add_option("--z", eval_args.z, "point in [0, 1]")->required();

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("curve", "error against N for both engines");
  add_common(curve, curve_args.c);
  curve->add_option("--z", curve_args.z, "point in [0, 1]");
  curve->add_option("--from", curve_args.from, "first N");
  curve->add_option("--to", curve_args.to, "last N");
  curve->add_option("--step", curve_args.step, "N increment");
  curve->add_option("--reference", curve_args.reference,
                    "reference value (default: chebyshev at --reference-n)");
  curve->add_option("--reference-n", curve_args.reference_order, "order of the reference run");

  auto* dist = app.add_subcommand("dist", "ordered beta distribution queries");
  dist->require_subcommand(1);
  DistArgs d_args;
  auto* pdf = dist->add_subcommand("pdf", "joint log density at --x, or marginal with --k");
  add_common(pdf, d_args.c);
  pdf->add_option("--x", d_args.x, "point (comma-separated) or scalar with --k")->required();
  auto* pdf_k = pdf->add_option("--k", d_args.k, "marginal index 1..n");
  auto* cdf = dist->add_subcommand("cdf", "P(X_k <= z) and P(z < X_k)");
  add_common(cdf, d_args.c);
  cdf->add_option("--k", d_args.k, "index 1..n")->required();
  cdf->add_option("--z", d_args.z, "point in [0, 1]")->required();
  auto* bracket = dist->add_subcommand("bracket", "P(X_k <= z < X_{k+1})");
  add_common(bracket, d_args.c);
  bracket->add_option("--k", d_args.k, "index 1..n-1")->required();
  bracket->add_option("--z", d_args.z, "point in (0, 1)")->required();
  auto* moment = dist->add_subcommand("moment", "E[prod X_i^alpha_i (1 - X_i)^beta_i]");
  add_common(moment, d_args.c);
  moment->add_option("--alpha", d_args.alpha, "exponents of X_i")->required();
  moment->add_option("--beta", d_args.beta, "exponents of 1 - X_i")->required();
  auto* posterior = dist->add_subcommand("posterior", "conjugate update with binomial data");
  add_common(posterior, d_args.c);
  posterior->add_option("--m", d_args.successes, "successes per level")->required();
  posterior->add_option("--k", d_args.failures, "failures per level")->required();
  auto* sample = dist->add_subcommand("sample", "draw points from the distribution");
  add_common(sample, d_args.c);
  sample->add_option("--count", d_args.count, "number of points")->check(CLI::PositiveNumber);
  sample->add_option("--seed", d_args.seed, "random seed");
  sample->add_option("--sampler", d_args.sampler, "rejection or gibbs")
      ->check(CLI::IsMember({"rejection", "gibbs"}));

  VerifyArgs v_args;
  auto* verify = app.add_subcommand("verify", "compare with the oracle and check identities");
  add_common(verify, v_args.c);
  verify->add_option("--z", v_args.z, "point in (0, 1]");
  verify->add_option("--tol", v_args.tol, "tolerance for residuals and oracle agreement");
  verify->add_option("--nodes", v_args.nodes, "quadrature nodes per dimension");
  verify->add_option("--samples", v_args.samples, "Monte Carlo samples for n > 4");
  verify->add_option("--seed", v_args.seed, "Monte Carlo seed");
  // Negative control for the test suite: corrupts the engine value.
  verify->add_option("--inject-error", v_args.inject)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  Runner io(out, err);
  try {
    if (eval->parsed()) return cmd_eval(io, eval_args);
    if (curve->parsed()) return cmd_curve(io, curve_args);
    if (verify->parsed()) return cmd_verify(io, v_args);
    if (pdf->parsed()) return cmd_dist_pdf(io, d_args, pdf_k->count() > 0);
    if (cdf->parsed()) return cmd_dist_cdf(io, d_args);
    if (bracket->parsed()) return cmd_dist_bracket(io, d_args);
    if (moment->parsed()) return cmd_dist_moment(io, d_args);
    if (posterior->parsed()) return cmd_dist_posterior(io, d_args);
    if (sample->parsed()) return cmd_dist_sample(io, d_args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ordered-beta"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace obeta::cli
