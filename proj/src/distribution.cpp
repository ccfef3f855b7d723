#include "ordered_beta/distribution.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include "ordered_beta/errors.hpp"

namespace obeta {

bool SimplexPoint::on_support() const noexcept {
  double previous = 0.0;
  for (double v : x) {
    if (!(v >= previous && v <= 1.0)) return false;
    previous = v;
  }
  return true;
}

std::string_view to_string(SamplerKind kind) {
  return kind == SamplerKind::rejection ? "rejection" : "gibbs";
}

std::optional<SamplerKind> parse_sampler(std::string_view text) {
  if (text == "rejection") return SamplerKind::rejection;
  if (text == "gibbs") return SamplerKind::gibbs;
  return std::nullopt;
}

OrderedBetaDist::OrderedBetaDist(ParamVector params, EvalSettings settings)
    : params_(std::move(params)), settings_(std::move(settings)) {
  forward_ = std::make_shared<const GeneralizedBeta>(params_, settings_);
  reflected_ = std::make_shared<const GeneralizedBeta>(reverse_swap(params_), settings_);
  normalizer_ = forward_->complete();
  if (!(normalizer_ > 0.0) || !std::isfinite(normalizer_)) {
    throw DomainError("normalizing constant is not a positive finite number");
  }
}

OrderedBetaDist::OrderedBetaDist(ParamVector params, EvalSettings settings, double normalizer,
                                 std::shared_ptr<const GeneralizedBeta> forward,
                                 std::shared_ptr<const GeneralizedBeta> reflected)
    : params_(std::move(params)),
      settings_(std::move(settings)),
      normalizer_(normalizer),
      forward_(std::move(forward)),
      reflected_(std::move(reflected)) {}

void OrderedBetaDist::check_index(std::size_t k, std::size_t upper) const {
  if (k < 1 || k > upper) {
    std::ostringstream os;
    os << "index k = " << k << " outside [1, " << upper << "]";
    throw DomainError(os.str());
  }
}

double OrderedBetaDist::split_term(std::size_t j, double z) const {
  return forward_->prefix_value(j, z) * reflected_->prefix_value(size() - j, 1.0 - z);
}

std::vector<double> OrderedBetaDist::split_terms(double z) const {
  const auto head = forward_->prefix_values(z, 1.0 - z);
  const auto tail = reflected_->prefix_values(1.0 - z, z);
  std::vector<double> terms(size() + 1);
  for (std::size_t j = 0; j <= size(); ++j) terms[j] = head[j] * tail[size() - j];
  return terms;
}

double OrderedBetaDist::log_pdf(const SimplexPoint& point) const {
  if (point.x.size() != size()) throw LengthMismatch("point dimension differs from n");
  if (!point.on_support()) return -std::numeric_limits<double>::infinity();
  double acc = -std::log(normalizer_);
  for (std::size_t i = 0; i < size(); ++i) {
    const double x = point.x[i];
    const double a = params_.a(i), b = params_.b(i);
    if (a != 1.0) acc += (a - 1.0) * std::log(x);
    if (b != 1.0) acc += (b - 1.0) * std::log1p(-x);
  }
  return acc;
}

double OrderedBetaDist::marginal_pdf(std::size_t k, double x) const {
  return marginal_pdf(k, x, 1.0 - x);
}

double OrderedBetaDist::marginal_pdf(std::size_t k, double x, double xc) const {
  check_index(k, size());
  // x may round to 1 while xc stays positive; both must lie in (0, 1].
  if (!(x > 0.0 && x <= 1.0 && xc > 0.0 && xc <= 1.0)) {
    throw DomainError("marginal density needs x in (0, 1)");
  }
  const double a = params_.a(k - 1), b = params_.b(k - 1);
  const double kernel = std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log(xc));
  return kernel * forward_->prefix_value(k - 1, x, xc) *
         reflected_->prefix_value(size() - k, xc, x) / normalizer_;
}

double OrderedBetaDist::bracket_prob(std::size_t k, double z) const {
  if (size() < 2) throw DomainError("bracket probabilities need n >= 2");
  check_index(k, size() - 1);
  if (!(z > 0.0 && z < 1.0)) throw DomainError("bracket probability needs z in (0, 1)");
  return split_term(k, z) / normalizer_;
}

double OrderedBetaDist::marginal_cdf(std::size_t k, double z) const {
  check_index(k, size());
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("marginal cdf needs z in [0, 1]");
  const auto terms = split_terms(z);
  double acc = 0.0;
  for (std::size_t j = k; j <= size(); ++j) acc += terms[j];
  return acc / normalizer_;
}

double OrderedBetaDist::marginal_survival(std::size_t k, double z) const {
  check_index(k, size());
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("marginal survival needs z in [0, 1]");
  const auto terms = split_terms(z);
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) acc += terms[j];
  return acc / normalizer_;
}

double OrderedBetaDist::mixed_moment(std::span<const double> alpha,
                                     std::span<const double> beta) const {
  if (alpha.size() != size() || beta.size() != size()) {
    throw LengthMismatch("moment exponents must have length n");
  }
  std::vector<double> a(size()), b(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (!(alpha[i] > -params_.a(i)) || !(beta[i] > -params_.b(i))) {
      std::ostringstream os;
      os << "moment exponents at index " << i + 1 << " need alpha > -a and beta > -b";
      throw MomentDomainError(os.str());
    }
    a[i] = params_.a(i) + alpha[i];
    b[i] = params_.b(i) + beta[i];
  }
  return beta_complete(ParamVector(std::move(a), std::move(b)), settings_) / normalizer_;
}

double OrderedBetaDist::marginal_median(std::size_t k) const {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (marginal_cdf(k, mid) < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

OrderedBetaDist OrderedBetaDist::reverse() const {
  return OrderedBetaDist(reverse_swap(params_), settings_, normalizer_, reflected_, forward_);
}

OrderedBetaDist OrderedBetaDist::posterior_update(const ObservationBatch& obs) const {
  if (obs.successes.size() != size() || obs.failures.size() != size()) {
    throw LengthMismatch("observation batch length differs from n");
  }
  std::vector<double> a(params_.a().begin(), params_.a().end());
  std::vector<double> b(params_.b().begin(), params_.b().end());
  for (std::size_t i = 0; i < size(); ++i) {
    a[i] += static_cast<double>(obs.successes[i]);
    b[i] += static_cast<double>(obs.failures[i]);
  }
  return OrderedBetaDist(ParamVector(std::move(a), std::move(b)), settings_);
}

ClassicalBetaCdf::ClassicalBetaCdf(double a, double b, const EvalSettings& settings)
    : lower_(ParamVector({a}, {b}), settings),
      upper_(ParamVector({b}, {a}), settings),
      total_(lower_.complete()) {}

double ClassicalBetaCdf::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x <= 0.5) return lower_.prefix_value(1, x) / total_;
  return 1.0 - upper_.prefix_value(1, 1.0 - x) / total_;
}

double ClassicalBetaCdf::survival(double x) const {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  if (x >= 0.5) return upper_.prefix_value(1, 1.0 - x) / total_;
  return 1.0 - lower_.prefix_value(1, x) / total_;
}

double ClassicalBetaCdf::quantile_between(double lower, double upper, double u,
                                          double tolerance) const {
  if (!(upper > lower)) return lower;
  // Work with whichever tail function is small over the interval.
  const bool use_cdf = lower < 0.5;
  const auto f = [&](double x) { return use_cdf ? cdf(x) : -survival(x); };
  const double f_lo = f(lower), f_hi = f(upper);
  if (!(f_hi > f_lo)) return 0.5 * (lower + upper);
  const double target = f_lo + u * (f_hi - f_lo);
  double lo = lower, hi = upper;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SampleBatch OrderedBetaDist::sample(std::size_t count, std::uint64_t seed, SamplerKind method,
                                    const SamplerOptions& options) const {
  if (count < 1) throw DomainError("sample count must be at least 1");
  return method == SamplerKind::rejection ? sample_rejection(count, seed, options)
                                          : sample_gibbs(count, seed, options);
}

SampleBatch OrderedBetaDist::sample_rejection(std::size_t count, std::uint64_t seed,
                                              const SamplerOptions& options) const {
  std::mt19937_64 rng(seed);
  std::vector<std::gamma_distribution<double>> ga, gb;
  for (std::size_t i = 0; i < size(); ++i) {
    ga.emplace_back(params_.a(i), 1.0);
    gb.emplace_back(params_.b(i), 1.0);
  }

  SampleBatch batch;
  batch.method = SamplerKind::rejection;
  batch.points.reserve(count);
  std::vector<double> x(size());
  while (batch.points.size() < count) {
    ++batch.trials;
    bool ordered = true;
    for (std::size_t i = 0; i < size(); ++i) {
      const double g1 = ga[i](rng);
      const double g2 = gb[i](rng);
      x[i] = g1 / (g1 + g2);
      if (i > 0 && x[i] < x[i - 1]) {
        ordered = false;
        break;
      }
    }
    if (ordered) batch.points.push_back({x});
    if (batch.trials == options.stall_window) {
      const double rate =
          static_cast<double>(batch.points.size()) / static_cast<double>(batch.trials);
      if (rate < options.stall_floor) {
        std::ostringstream os;
        os << "rejection sampler accepted " << batch.points.size() << " of " << batch.trials
           << " trials; use the gibbs sampler";
        throw RejectionStall(os.str(), rate);
      }
    }
  }
  batch.acceptance_rate =
      static_cast<double>(batch.points.size()) / static_cast<double>(batch.trials);
  return batch;
}

SampleBatch OrderedBetaDist::sample_gibbs(std::size_t count, std::uint64_t seed,
                                          const SamplerOptions& options) const {
  if (options.burn_in < 0 || options.thinning < 1) {
    throw DomainError("gibbs sampler needs burn_in >= 0 and thinning >= 1");
  }
  // The n = 1 engine on one parameter pair needs only a short expansion.
  EvalSettings one = settings_;
  one.method = Method::chebyshev;
  one.precision = PrecisionConfig::machine();

  std::vector<ClassicalBetaCdf> conditionals;
  std::vector<double> x;
  conditionals.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    conditionals.emplace_back(params_.a(i), params_.b(i), one);
    x.push_back(marginal_median(i + 1));
  }
  // Medians of ordered marginals are ordered already; sorting guards rounding.
  std::sort(x.begin(), x.end());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto sweep = [&] {
    for (std::size_t i = 0; i < size(); ++i) {
      const double lower = i == 0 ? 0.0 : x[i - 1];
      const double upper = i + 1 == size() ? 1.0 : x[i + 1];
      x[i] = conditionals[i].quantile_between(lower, upper, uniform(rng),
                                              options.bisection_tolerance);
    }
  };

  SampleBatch batch;
  batch.method = SamplerKind::gibbs;
  batch.points.reserve(count);
  for (int s = 0; s < options.burn_in; ++s) {
    sweep();
    ++batch.sweeps;
  }
  while (batch.points.size() < count) {
    for (int t = 0; t < options.thinning; ++t) {
      sweep();
      ++batch.sweeps;
    }
    batch.points.push_back({x});
  }
  batch.trials = batch.sweeps;
  return batch;
}

}  // namespace obeta
