// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned here and printed with each line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ordered_beta/beta_eval.hpp"
#include "ordered_beta/chebyshev.hpp"
#include "ordered_beta/distribution.hpp"
#include "ordered_beta/oracle.hpp"
#include "ordered_beta/quadrature.hpp"
#include "support.hpp"

using namespace obeta;
using testing::rel;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %-22s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Wall time of f() in seconds, with its result.
template <class F>
auto timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  auto value = f();
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  return std::pair{value, took.count()};
}

double complete(const ParamVector& p, Method method, int order,
                PrecisionConfig precision = PrecisionConfig::machine()) {
  EvalSettings s;
  s.method = method;
  s.order = order;
  s.precision = precision;
  return GeneralizedBeta(p, s).complete();
}

void golden_one() {
  const auto [cheb, t1] = timed([] { return complete(testing::set1(), Method::chebyshev, 64); });
  const auto [tay, t2] = timed([] { return complete(testing::set1(), Method::taylor, 128); });
  const double e1 = rel(cheb, testing::kSet1), e2 = rel(tay, testing::kSet1);
  const bool ok = e1 <= 1e-12 && e2 <= 1e-12 && t1 < 0.1 && t2 < 0.1;
  report(ok, "golden-value-1",
         fmt("chebyshev N=64 rel=%.2e (%.3fs), taylor N=128 rel=%.2e (%.3fs); "
             "need rel<=1e-12, time<0.1s",
             e1, t1, e2, t2));
}

void golden_two() {
  const double cheb = complete(testing::set2(), Method::chebyshev, 64);
  const double dbl = complete(testing::set2(), Method::taylor, 200);
  const double ext =
      complete(testing::set2(), Method::taylor, 200, PrecisionConfig::extended());
  const double e1 = rel(cheb, testing::kSet2), e2 = rel(dbl, testing::kSet2),
               e3 = rel(ext, testing::kSet2);
  // "At least 4 significant digits but not 8": 1e-8 < rel <= 1e-4.
  const bool ok = e1 <= 1e-9 && e2 <= 1e-4 && e2 > 1e-8 && e3 <= 1e-12;
  report(ok, "golden-value-2",
         fmt("chebyshev N=64 rel=%.2e (<=1e-9); taylor double N=200 rel=%.2e "
             "(%.1f digits, need [4, 8)); taylor extended N=200 rel=%.2e (<=1e-12)",
             e1, e2, -std::log10(e2), e3));
}

void golden_three() {
  const auto [tay, t1] = timed([] { return complete(testing::set3(), Method::taylor, 50); });
  const auto [cheb, t2] = timed([] { return complete(testing::set3(), Method::chebyshev, 20); });
  const double e1 = rel(tay, testing::kSet3), e2 = rel(cheb, testing::kSet3);
  const bool ok = e1 <= 1e-11 && e2 <= 1e-11 && t1 < 1.0 && t2 < 1.0;
  report(ok, "golden-value-3",
         fmt("taylor N=50 rel=%.2e (%.3fs), chebyshev N=20 rel=%.2e (%.3fs); "
             "need rel<=1e-11, time<1s",
             e1, t1, e2, t2));
}

// Least-squares slope of log(err) against N.
double fitted_slope(const std::vector<std::pair<int, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [n, e] : points) {
    const double y = std::log(e);
    sx += n;
    sy += y;
    sxx += double(n) * n;
    sxy += n * y;
  }
  const double m = static_cast<double>(points.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void convergence_shape() {
  // Pre-floor range: errors above 1e-13, where rounding has not taken over.
  const double floor = 1e-13;
  std::vector<std::pair<int, double>> taylor_pts, cheb_pts;
  int taylor_hit = -1, cheb_hit = -1;
  for (int n = 2; n <= 64; ++n) {
    const double et = std::abs(complete(testing::set1(), Method::taylor, n) - testing::kSet1);
    const double ec =
        std::abs(complete(testing::set1(), Method::chebyshev, n) - testing::kSet1);
    if (et > floor && taylor_hit < 0) taylor_pts.emplace_back(n, et);
    if (ec > floor && cheb_hit < 0) cheb_pts.emplace_back(n, ec);
    if (et <= 1e-12 && taylor_hit < 0) taylor_hit = n;
    if (ec <= 1e-12 && cheb_hit < 0) cheb_hit = n;
  }
  const double st = fitted_slope(taylor_pts), sc = fitted_slope(cheb_pts);
  const bool ok = st <= -std::log(2.0) && sc <= -std::log(3.0) && cheb_hit > 0 &&
                  taylor_hit > 0 && cheb_hit < taylor_hit;
  report(ok, "convergence-shape",
         fmt("slope taylor=%.3f (<=-ln2=%.3f, %zu pts), chebyshev=%.3f (<=-ln3=%.3f, %zu pts); "
             "first N with err<=1e-12: chebyshev %d < taylor %d",
             st, -std::log(2.0), taylor_pts.size(), sc, -std::log(3.0), cheb_pts.size(),
             cheb_hit, taylor_hit));
}

void identity_suite() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_real_distribution<double> uz(0.02, 0.98);
  double worst = 0.0;
  int checked = 0;
  for (int set = 0; set < 100; ++set) {
    const auto p = testing::random_params(rng, dim(rng), 0.2, 3.0);
    for (int j = 0; j < 5; ++j) {
      worst = std::max(worst, identity_residuals(p, uz(rng)).max());
      ++checked;
    }
  }
  report(worst <= 1e-9, "identity-suite",
         fmt("%d (set, z) pairs, worst relative residual over (i)-(v) = %.2e (<=1e-9)",
             checked, worst));
}

void oracle_equivalence() {
  std::mt19937_64 rng(20240602);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> uz(0.0, 1.0);
  int quad_ok = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto p = testing::random_params(rng, dim(rng), 0.2, 3.0);
    const double z = 1.0 - uz(rng);  // (0, 1]
    const auto o = oracle_quadrature(p, z);
    const double v = incomplete_beta(p, z).value;
    const double diff = std::abs(v - o.value);
    worst_ratio = std::max(worst_ratio, diff / o.error);
    quad_ok += diff <= o.error;
  }
  int mc_ok = 0;
  double worst_sd = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto p = testing::random_params(rng, dim(rng), 0.2, 3.0);
    const double z = 0.2 + 0.8 * uz(rng);
    const auto o = oracle_montecarlo(p, z, 1000000, 1000 + i);
    const double sd = std::abs(incomplete_beta(p, z).value - o.value) / o.error;
    worst_sd = std::max(worst_sd, sd);
    mc_ok += sd <= 3.0;
  }
  report(quad_ok == 50 && mc_ok == 10, "oracle-equivalence",
         fmt("quadrature %d/50 within error_bound (worst |diff|/bound=%.2f); "
             "Monte Carlo 1e6 samples %d/10 within 3 stderr (worst %.2f)",
             quad_ok, worst_ratio, mc_ok, worst_sd));
}

struct Moment {
  double mean, error;
};

Moment batch_mean(const std::vector<double>& xs, std::size_t batches = 50) {
  const std::size_t size = xs.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t i = 0; i < size; ++i) means[b] += xs[b * size + i];
    means[b] /= static_cast<double>(size);
  }
  double m = 0.0, var = 0.0;
  for (double v : means) m += v;
  m /= static_cast<double>(batches);
  for (double v : means) var += (v - m) * (v - m);
  var /= static_cast<double>(batches - 1);
  return {m, std::sqrt(var / static_cast<double>(batches))};
}

std::vector<double> column(const SampleBatch& batch, std::size_t i, int power) {
  std::vector<double> out;
  for (const auto& p : batch.points) out.push_back(std::pow(p.x[i], power));
  return out;
}

void distribution_suite() {
  std::mt19937_64 rng(20240603);
  std::vector<OrderedBetaDist> dists{OrderedBetaDist(testing::set1())};
  for (int i = 0; i < 9; ++i) dists.emplace_back(testing::random_params(rng, 1 + i % 4, 0.2, 3.0));

  // cdf + survival.
  double worst_sum = 0.0;
  for (const auto& d : dists) {
    for (std::size_t k = 1; k <= d.size(); ++k) {
      for (int j = 0; j <= 20; ++j) {
        const double z = j / 20.0;
        worst_sum = std::max(worst_sum,
                             std::abs(d.marginal_cdf(k, z) + d.marginal_survival(k, z) - 1.0));
      }
    }
  }

  // Marginal densities integrate to one.
  double worst_mass = 0.0;
  for (const auto& d : dists) {
    for (std::size_t k = 1; k <= d.size(); ++k) {
      const double alpha = std::min(d.params().a(k - 1), d.params().b(k - 1));
      const auto rule = quadrature::double_exponential(
          200, quadrature::double_exponential_half_width(alpha));
      const double mass = quadrature::integrate(
          rule, [&](double x, double xc) { return d.marginal_pdf(k, x, xc); });
      worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    }
  }

  // Posterior parameters are exactly (a + m, b + k).
  bool posterior_exact = true;
  std::uniform_int_distribution<int> counts(0, 20);
  for (const auto& d : dists) {
    ObservationBatch obs;
    std::vector<double> a(d.params().a().begin(), d.params().a().end());
    std::vector<double> b(d.params().b().begin(), d.params().b().end());
    for (std::size_t i = 0; i < d.size(); ++i) {
      obs.successes.push_back(counts(rng));
      obs.failures.push_back(counts(rng));
      a[i] += static_cast<double>(obs.successes[i]);
      b[i] += static_cast<double>(obs.failures[i]);
    }
    posterior_exact &= d.posterior_update(obs).params() == ParamVector(a, b);
  }

  // Sampler moments: rejection against mixed_moment, gibbs against rejection.
  double worst_sd = 0.0;
  for (std::size_t idx = 0; idx < 5; ++idx) {
    const auto& d = dists[idx];
    const auto rej = d.sample(10000, 500 + idx, SamplerKind::rejection);
    const auto gib = d.sample(10000, 600 + idx, SamplerKind::gibbs);
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::vector<double> alpha(d.size(), 0.0), beta(d.size(), 0.0);
      alpha[i] = 1.0;
      const double exact = d.mixed_moment(alpha, beta);
      const auto r1 = batch_mean(column(rej, i, 1));
      worst_sd = std::max(worst_sd, std::abs(r1.mean - exact) / r1.error);
      for (int power : {1, 2}) {
        const auto a = batch_mean(column(rej, i, power));
        const auto g = batch_mean(column(gib, i, power));
        worst_sd = std::max(worst_sd, std::abs(a.mean - g.mean) / std::hypot(a.error, g.error));
      }
    }
  }

  // n = 1: KS against the classical cdf at the 1% level.
  double worst_ks = 0.0;
  const double critical = 1.628 / std::sqrt(10000.0);
  for (auto [a, b] : {std::pair{2.5, 0.7}, {0.4, 0.4}, {1.0, 3.0}}) {
    const OrderedBetaDist d(ParamVector({a}, {b}));
    const ClassicalBetaCdf cdf(a, b);
    for (auto method : {SamplerKind::rejection, SamplerKind::gibbs}) {
      auto xs = column(d.sample(10000, 700, method), 0, 1);
      std::sort(xs.begin(), xs.end());
      double ks = 0.0;
      const double n = static_cast<double>(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf.cdf(xs[i]);
        ks = std::max({ks, (i + 1) / n - f, f - i / n});
      }
      worst_ks = std::max(worst_ks, ks);
    }
  }

  const bool ok = worst_sum <= 1e-11 && worst_mass <= 1e-7 && posterior_exact &&
                  worst_sd <= 4.0 && worst_ks < critical;
  report(ok, "distribution-suite",
         fmt("|cdf+surv-1|=%.1e (<=1e-11); |mass-1|=%.1e (<=1e-7); posterior exact=%s; "
             "moment check worst %.2f stderr (<=4); n=1 KS %.4f (<%.4f)",
             worst_sum, worst_mass, posterior_exact ? "yes" : "no", worst_sd, worst_ks,
             critical));
}

void stability_probe() {
  const double delta = 1e-8;
  const int order = 64;
  const auto p = testing::set1();
  // Run the full pipeline with every stage's recursion seeded at
  // (mu_N, mu_{N+1}) = (s0, s1), then compare beta(1/2).
  const auto run = [&](double s0, double s1) {
    auto coeffs = cheb_unit(order);
    for (std::size_t m = 1; m <= p.size(); ++m) {
      coeffs = cheb_stage(coeffs, p.prefix_sum(m), p.b(m - 1), {}, s0, s1);
    }
    return cheb_eval(coeffs, 0.5);
  };
  const double base = run(0.0, 0.0);
  double worst = 0.0;
  for (auto [s0, s1] : {std::pair{delta, 0.0}, {0.0, delta}, {delta, delta}, {delta, -delta}}) {
    worst = std::max(worst, std::abs(run(s0, s1) - base));
  }
  const double bound = 6.0 * (order + 2) * delta;
  report(worst <= bound, "stability-probe",
         fmt("set 1, N=%d, delta=%.0e: max change %.2e (<= 6(N+2)delta = %.2e)", order, delta,
             worst, bound));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{
      golden_one,         golden_two,         golden_three,   convergence_shape,
      identity_suite,     oracle_equivalence, distribution_suite, stability_probe};
  for (const auto& c : criteria) c();
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
