#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ordered_beta/beta_eval.hpp"
#include "ordered_beta/params.hpp"

namespace obeta {

/// A point of [0,1]^n; on the support when 0 <= x_1 <= ... <= x_n <= 1.
/// Ties are on the support (the simplex is closed).
struct SimplexPoint {
  std::vector<double> x;

  bool on_support() const noexcept;
};

/// Binomial data per level: successes m_i and failures k_i.
struct ObservationBatch {
  std::vector<std::uint64_t> successes;
  std::vector<std::uint64_t> failures;
};

enum class SamplerKind { rejection, gibbs };

std::string_view to_string(SamplerKind kind);
std::optional<SamplerKind> parse_sampler(std::string_view text);

struct SamplerOptions {
  /// Rejection: RejectionStall once the acceptance rate after `stall_window`
  /// trials is below `stall_floor`.
  double stall_floor = 1e-4;
  std::uint64_t stall_window = 100000;
  /// Gibbs: sweeps discarded before the first kept draw, sweeps between kept
  /// draws, and the bisection tolerance of the truncated-beta inversion.
  int burn_in = 100;
  int thinning = 1;
  double bisection_tolerance = 1e-12;
};

struct SampleBatch {
  std::vector<SimplexPoint> points;
  SamplerKind method = SamplerKind::rejection;
  /// Rejection only.
  std::optional<double> acceptance_rate;
  std::uint64_t trials = 0;
  /// Gibbs only: sweeps actually run, including burn-in.
  std::uint64_t sweeps = 0;
};

/// Ordered beta distribution on 0 <= x_1 <= ... <= x_n <= 1 with density
/// C^{-1} prod_i x_i^{a_i-1} (1-x_i)^{b_i-1}, C = B(a;b|1).
///
/// Holds two evaluators: one for the parameters, one for their reverse-swap.
/// Every marginal quantity is a sum of products of a prefix function at z and
/// a reflected-suffix function at 1 - z, so both are needed. Immutable.
class OrderedBetaDist {
 public:
  explicit OrderedBetaDist(ParamVector params, EvalSettings settings = {});

  const ParamVector& params() const noexcept { return params_; }
  const EvalSettings& settings() const noexcept { return settings_; }
  std::size_t size() const noexcept { return params_.size(); }
  /// C.
  double normalizer() const noexcept { return normalizer_; }

  /// Log density; -infinity off the support.
  double log_pdf(const SimplexPoint& point) const;

  /// Density of X_k, 1 <= k <= n, at x in (0, 1).
  double marginal_pdf(std::size_t k, double x) const;
  /// Same, with xc = 1 - x supplied separately for accuracy near x = 1.
  double marginal_pdf(std::size_t k, double x, double xc) const;

  /// P(X_k <= z < X_{k+1}), 1 <= k <= n-1, z in (0, 1).
  double bracket_prob(std::size_t k, double z) const;

  /// P(X_k <= z) and P(z < X_k), 1 <= k <= n, z in [0, 1].
  double marginal_cdf(std::size_t k, double z) const;
  double marginal_survival(std::size_t k, double z) const;
  /// Median of X_k by bisection on the marginal cdf.
  double marginal_median(std::size_t k) const;

  /// E[prod_i X_i^{alpha_i} (1 - X_i)^{beta_i}]; needs alpha_i > -a_i and
  /// beta_i > -b_i (MomentDomainError).
  double mixed_moment(std::span<const double> alpha, std::span<const double> beta) const;

  /// Law of (1 - X_n, ..., 1 - X_1). Shares C and both evaluators.
  OrderedBetaDist reverse() const;

  /// Conjugate update with binomial data: parameters (a + m, b + k).
  OrderedBetaDist posterior_update(const ObservationBatch& obs) const;

  /// Deterministic given the seed.
  SampleBatch sample(std::size_t count, std::uint64_t seed,
                     SamplerKind method = SamplerKind::rejection,
                     const SamplerOptions& options = {}) const;

  const GeneralizedBeta& prefix_evaluator() const noexcept { return *forward_; }
  const GeneralizedBeta& reflected_evaluator() const noexcept { return *reflected_; }

 private:
  OrderedBetaDist(ParamVector params, EvalSettings settings, double normalizer,
                  std::shared_ptr<const GeneralizedBeta> forward,
                  std::shared_ptr<const GeneralizedBeta> reflected);

  void check_index(std::size_t k, std::size_t upper) const;
  // B(prefix_j | z) * B(reflected suffix of length n - j | 1 - z).
  double split_term(std::size_t j, double z) const;
  // All of them, j = 0..n.
  std::vector<double> split_terms(double z) const;

  SampleBatch sample_rejection(std::size_t count, std::uint64_t seed,
                               const SamplerOptions& options) const;
  SampleBatch sample_gibbs(std::size_t count, std::uint64_t seed,
                           const SamplerOptions& options) const;

  ParamVector params_;
  EvalSettings settings_;
  double normalizer_ = 0.0;
  std::shared_ptr<const GeneralizedBeta> forward_;
  std::shared_ptr<const GeneralizedBeta> reflected_;
};

/// Regularized incomplete beta I_x(a, b) and its complement, accurate in
/// both tails; `bisect_truncated` inverts it on [lower, upper].
class ClassicalBetaCdf {
 public:
  ClassicalBetaCdf(double a, double b, const EvalSettings& settings = {});

  double cdf(double x) const;
  double survival(double x) const;
  double median() const { return quantile_between(0.0, 1.0, 0.5, 1e-12); }

  /// x in [lower, upper] with P(lower < X <= x) = u P(lower < X <= upper).
  double quantile_between(double lower, double upper, double u, double tolerance) const;

 private:
  GeneralizedBeta lower_;
  GeneralizedBeta upper_;
  double total_;
};

}  // namespace obeta
