#include "ordered_beta/beta_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include "ordered_beta/errors.hpp"
#include "ordered_beta/quadrature.hpp"

namespace obeta {

std::string_view to_string(Method method) {
  return method == Method::taylor ? "taylor" : "chebyshev";
}

std::optional<Method> parse_method(std::string_view text) {
  if (text == "taylor") return Method::taylor;
  if (text == "chebyshev" || text == "cheb") return Method::chebyshev;
  return std::nullopt;
}

int default_order(Method method, double eps) {
  return method == Method::taylor ? taylor_default_order(eps) : cheb_default_order(eps);
}

namespace detail {

namespace {

void check_unit_interval(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("z must lie in [0, 1]");
}

// Engine tables for every prefix of one parameter vector. Only knows how to
// evaluate on [0, 1/2].
template <class Real>
class PrefixChain {
 public:
  PrefixChain(const ParamVector& p, const EvalSettings& settings) : method_(settings.method) {
    prefix_sums_.assign(p.prefix_sums().begin(), p.prefix_sums().end());
    if (method_ == Method::taylor) {
      for (auto& table : taylor_prefix_tables<Real>(p, settings.order, settings.taylor)) {
        taylor_.push_back(std::move(table.coeffs));
      }
    } else {
      for (auto& table : cheb_prefix_tables(p, settings.order, settings.chebyshev)) {
        cheb_.push_back(std::move(table.coeffs));
      }
    }
  }

  std::size_t size() const noexcept { return prefix_sums_.size(); }

  // beta(prefix_m | z), z in (0, 1/2].
  Real scaled(std::size_t m, double z) const {
    if (m == 0) return Real(1);
    if (method_ == Method::taylor) {
      const auto& c = taylor_[m - 1];
      const Real x(z);
      Real acc(0);
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
    return Real(cheb_eval(cheb_[m - 1], z));
  }

  // B(prefix_m | z), z in [0, 1/2].
  Real value(std::size_t m, double z) const {
    if (m == 0) return Real(1);
    if (z == 0.0) return Real(0);
    using std::pow;
    return pow(Real(z), Real(prefix_sums_[m - 1])) * scaled(m, z);
  }

  Real log_value(std::size_t m, double z) const {
    using std::log;
    if (m == 0) return Real(0);
    if (z == 0.0) return Real(-std::numeric_limits<double>::infinity());
    return log(scaled(m, z)) + Real(prefix_sums_[m - 1]) * log(Real(z));
  }

 private:
  Method method_;
  std::vector<double> prefix_sums_;
  std::vector<std::vector<Real>> taylor_;
  std::vector<std::vector<double>> cheb_;
};

}  // namespace

class EvaluatorCore {
 public:
  EvaluatorCore(ParamVector params, EvalSettings settings)
      : params_(std::move(params)), settings_(std::move(settings)) {}
  virtual ~EvaluatorCore() = default;

  const ParamVector& params() const noexcept { return params_; }
  const EvalSettings& settings() const noexcept { return settings_; }

  virtual PrecisionConfig effective_precision() const noexcept = 0;
  virtual bool precision_warning() const noexcept = 0;
  virtual double scaled(double z) const = 0;
  virtual double prefix_value(std::size_t m, double z) const = 0;
  virtual double log_prefix_value(std::size_t m, double z) const = 0;
  virtual double prefix_value(std::size_t m, double z, double zc) const = 0;
  virtual std::vector<double> prefix_values(double z, double zc) const = 0;
  virtual double prefix_complete(std::size_t m) const = 0;

 protected:
  ParamVector params_;
  EvalSettings settings_;
};

namespace {

template <class Real>
class EvaluatorImpl final : public EvaluatorCore {
 public:
  EvaluatorImpl(ParamVector params, EvalSettings settings)
      : EvaluatorCore(std::move(params), std::move(settings)),
        forward_(params_, settings_),
        reflected_(params_.size()),
        complete_(params_.size()) {
    warning_ = settings_.method == Method::taylor &&
               taylor_precision_warning(params_, precision_of<Real>(), settings_.taylor);
  }

  PrecisionConfig effective_precision() const noexcept override { return precision_of<Real>(); }
  bool precision_warning() const noexcept override { return warning_; }

  double scaled(double z) const override {
    if (!(z > 0.0 && z <= 0.5)) throw DomainError("scaled evaluation needs z in (0, 1/2]");
    return static_cast<double>(forward_.scaled(params_.size(), z));
  }

  double prefix_value(std::size_t m, double z) const override {
    check(m, z);
    if (z <= 0.5) return static_cast<double>(forward_.value(m, z));
    return static_cast<double>(reduced(m, 1.0 - z));
  }

  double prefix_value(std::size_t m, double z, double zc) const override {
    check(m, z);
    check_unit_interval(zc);
    if (z <= 0.5) return static_cast<double>(forward_.value(m, z));
    return static_cast<double>(reduced(m, zc));
  }

  std::vector<double> prefix_values(double z, double zc) const override {
    check(0, z);
    check_unit_interval(zc);
    const std::size_t n = params_.size();
    std::vector<double> out(n + 1);
    if (z <= 0.5) {
      for (std::size_t m = 0; m <= n; ++m) out[m] = static_cast<double>(forward_.value(m, z));
    } else {
      const auto g = reduced_all(n, zc);
      for (std::size_t m = 0; m <= n; ++m) out[m] = static_cast<double>(g[m]);
    }
    return out;
  }

  double log_prefix_value(std::size_t m, double z) const override {
    check(m, z);
    if (z <= 0.5) return static_cast<double>(forward_.log_value(m, z));
    using std::log;
    return static_cast<double>(log(reduced(m, 1.0 - z)));
  }

  double prefix_complete(std::size_t m) const override {
    check(m, 1.0);
    return static_cast<double>(complete(m));
  }

 private:
  void check(std::size_t m, double z) const {
    if (m > params_.size()) throw LengthMismatch("prefix longer than parameter list");
    check_unit_interval(z);
  }

  // Tables of reverse_swap(prefix_k); its j-prefix is the reflected block
  // (b_k..b_{k-j+1} ; a_k..a_{k-j+1}).
  const PrefixChain<Real>& reflected(std::size_t k) const {
    std::lock_guard lock(mutex_);
    auto& slot = reflected_[k - 1];
    if (!slot) {
      slot = std::make_unique<PrefixChain<Real>>(reverse_swap(params_.prefix(k)), settings_);
    }
    return *slot;
  }

  // B(prefix_k) = sum_j B(prefix_j | 1/2) B(reflected_{k-j} | 1/2).
  Real complete(std::size_t k) const {
    if (k == 0) return Real(1);
    {
      std::lock_guard lock(mutex_);
      if (complete_[k - 1]) return *complete_[k - 1];
    }
    const auto& refl = reflected(k);
    Real sum(0);
    for (std::size_t j = 0; j <= k; ++j) sum += forward_.value(j, 0.5) * refl.value(k - j, 0.5);
    std::lock_guard lock(mutex_);
    complete_[k - 1] = sum;
    return sum;
  }

  // B(prefix_m | 1 - w) for w in [0, 1/2): solves the prefix/suffix identity
  // for the last term, inductively over k = 1..m. Every reflected factor is
  // evaluated at w.
  Real reduced(std::size_t m, double w) const { return reduced_all(m, w)[m]; }

  // B(prefix_k | 1 - w) for k = 0..m; each step reuses the earlier ones.
  std::vector<Real> reduced_all(std::size_t m, double w) const {
    std::vector<Real> g(m + 1);
    g[0] = Real(1);
    for (std::size_t k = 1; k <= m; ++k) {
      const auto& refl = reflected(k);
      Real acc = complete(k);
      for (std::size_t j = 0; j < k; ++j) acc -= g[j] * refl.value(k - j, w);
      g[k] = acc;
    }
    return g;
  }

  PrefixChain<Real> forward_;
  bool warning_ = false;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<PrefixChain<Real>>> reflected_;
  mutable std::vector<std::optional<Real>> complete_;
};

}  // namespace
}  // namespace detail

GeneralizedBeta::GeneralizedBeta(ParamVector params, EvalSettings settings) {
  settings.precision.validate();
  if (settings.order < 0) throw DomainError("truncation order must be non-negative");
  if (settings.method == Method::taylor && settings.precision.is_extended()) {
    core_ = std::make_shared<detail::EvaluatorImpl<ExtendedReal>>(std::move(params),
                                                                  std::move(settings));
  } else {
    core_ = std::make_shared<detail::EvaluatorImpl<double>>(std::move(params),
                                                            std::move(settings));
  }
}

const ParamVector& GeneralizedBeta::params() const noexcept { return core_->params(); }
const EvalSettings& GeneralizedBeta::settings() const noexcept { return core_->settings(); }
PrecisionConfig GeneralizedBeta::effective_precision() const noexcept {
  return core_->effective_precision();
}
bool GeneralizedBeta::precision_warning() const noexcept { return core_->precision_warning(); }

EvalResult GeneralizedBeta::evaluate(double z) const {
  detail::check_unit_interval(z);
  const auto& p = params();
  EvalResult result;
  result.method = settings().method;
  result.order = settings().order;
  result.precision = effective_precision();
  result.precision_warning = precision_warning();
  if (z == 0.0) {
    result.value = 0.0;
    result.log_value = -std::numeric_limits<double>::infinity();
    return result;
  }
  const double scale = std::pow(z, p.total_a());
  double scaled_value;
  if (z <= 0.5) {
    scaled_value = scaled(z);
    result.log_value = std::log(scaled_value) + p.total_a() * std::log(z);
  } else {
    const double v = prefix_value(p.size(), z);
    scaled_value = v / scale;
    result.log_value = core_->log_prefix_value(p.size(), z);
  }
  result.scaled_value = scaled_value;
  result.value = scaled_value * scale;
  return result;
}

double GeneralizedBeta::value(double z) const { return prefix_value(params().size(), z); }
double GeneralizedBeta::log_value(double z) const {
  return log_prefix_value(params().size(), z);
}
double GeneralizedBeta::prefix_value(std::size_t m, double z) const {
  return core_->prefix_value(m, z);
}
double GeneralizedBeta::prefix_value(std::size_t m, double z, double zc) const {
  return core_->prefix_value(m, z, zc);
}
std::vector<double> GeneralizedBeta::prefix_values(double z) const {
  return core_->prefix_values(z, 1.0 - z);
}
std::vector<double> GeneralizedBeta::prefix_values(double z, double zc) const {
  return core_->prefix_values(z, zc);
}
double GeneralizedBeta::log_prefix_value(std::size_t m, double z) const {
  return core_->log_prefix_value(m, z);
}
double GeneralizedBeta::prefix_complete(std::size_t m) const {
  return core_->prefix_complete(m);
}
double GeneralizedBeta::complete() const { return prefix_complete(params().size()); }
double GeneralizedBeta::scaled(double z) const { return core_->scaled(z); }

double beta_scaled(const ParamVector& p, double z, const EvalSettings& settings) {
  return GeneralizedBeta(p, settings).scaled(z);
}

EvalResult incomplete_beta(const ParamVector& p, double z, const EvalSettings& settings) {
  return GeneralizedBeta(p, settings).evaluate(z);
}

double beta_complete(const ParamVector& p, const EvalSettings& settings) {
  return GeneralizedBeta(p, settings).complete();
}

double IdentityResiduals::max() const noexcept {
  return std::max({symmetry, prefix_suffix_sum, alternating_sum, last_kernel_integral,
                   marginal_kernel_integral});
}

namespace {

double relative(double residual, double scale) {
  return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual);
}

// x^{a-1} (1-x)^{b-1} with the complement supplied separately.
double kernel(double x, double xc, double a, double b) {
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log(xc));
}

}  // namespace

IdentityResiduals identity_residuals(const ParamVector& p, double z,
                                     const EvalSettings& settings, int quadrature_nodes) {
  if (!(z > 0.0 && z < 1.0)) throw DomainError("identity residuals need z in (0, 1)");
  const std::size_t n = p.size();
  const GeneralizedBeta forward(p, settings);
  const GeneralizedBeta reflected(reverse_swap(p), settings);
  // Same orientation, reversed order: (a_n..a_1 ; b_n..b_1).
  const GeneralizedBeta reversed(
      ParamVector(std::vector<double>(p.a().rbegin(), p.a().rend()),
                  std::vector<double>(p.b().rbegin(), p.b().rend())),
      settings);

  IdentityResiduals r;
  const double full = forward.complete();
  r.symmetry = relative(full - reflected.complete(), full);

  double sum = 0.0, alternating = 0.0, largest = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    sum += forward.prefix_value(k, z) * reflected.prefix_value(n - k, 1.0 - z);
    const double term = forward.prefix_value(k, z) * reversed.prefix_value(n - k, z);
    alternating += (k % 2 == 0 ? term : -term);
    largest = std::max(largest, std::abs(term));
  }
  r.prefix_suffix_sum = relative(sum - full, full);
  r.alternating_sum = relative(alternating, largest);

  double min_exponent = p.total_a();
  for (double b : p.b()) min_exponent = std::min(min_exponent, b);
  for (double a : p.a()) min_exponent = std::min(min_exponent, a);
  const auto rule = quadrature::double_exponential(
      quadrature_nodes, quadrature::double_exponential_half_width(min_exponent));

  // x = z t, 1 - x = (1 - z) + z (1 - t).
  const double an = p.a(n - 1), bn = p.b(n - 1);
  const double partial = z * quadrature::integrate(rule, [&](double t, double tc) {
    const double x = z * t;
    const double xc = (1.0 - z) + z * tc;
    return kernel(x, xc, an, bn) * forward.prefix_value(n - 1, x, xc);
  });
  const double direct = forward.value(z);
  r.last_kernel_integral = relative(partial - direct, direct);

  double worst = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double ak = p.a(k - 1), bk = p.b(k - 1);
    const double integral = quadrature::integrate(rule, [&](double x, double xc) {
      return kernel(x, xc, ak, bk) * forward.prefix_value(k - 1, x, xc) *
             reflected.prefix_value(n - k, xc, x);
    });
    worst = std::max(worst, relative(integral - full, full));
  }
  r.marginal_kernel_integral = worst;
  return r;
}

}  // namespace obeta
