#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "ordered_beta/chebyshev.hpp"
#include "ordered_beta/params.hpp"
#include "ordered_beta/precision.hpp"
#include "ordered_beta/taylor.hpp"

namespace obeta {

enum class Method { taylor, chebyshev };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view text);

struct EvalSettings {
  Method method = Method::chebyshev;
  int order = 64;
  /// Extended precision applies to the Taylor engine; the Chebyshev engine
  /// always runs in machine double.
  PrecisionConfig precision;
  TaylorOptions taylor;
  ChebOptions chebyshev;
};

/// Default truncation order reaching tolerance eps with the given engine.
int default_order(Method method, double eps);

struct EvalResult {
  /// B(a;b|z).
  double value = 0.0;
  /// z^{-A_n} B(a;b|z); absent at z = 0. value == *scaled_value * z^{A_n}
  /// exactly, both being the result of that one multiplication.
  std::optional<double> scaled_value;
  /// log B, computed as log(scaled) + A_n log z so it survives underflow.
  double log_value = 0.0;
  Method method = Method::chebyshev;
  int order = 0;
  PrecisionConfig precision;
  bool precision_warning = false;
};

namespace detail {
class EvaluatorCore;
}

/// Generalized incomplete beta function for one parameter vector.
///
/// Engine tables depend only on the parameters, so they are built once and
/// reused for every z. Tables for the reflected prefixes that the reduction
/// identity needs on (1/2, 1] are built on first use. The object is immutable
/// from the outside and safe to share between threads; copies share tables.
class GeneralizedBeta {
 public:
  explicit GeneralizedBeta(ParamVector params, EvalSettings settings = {});

  const ParamVector& params() const noexcept;
  const EvalSettings& settings() const noexcept;
  /// Precision actually used (extended only for the Taylor engine).
  PrecisionConfig effective_precision() const noexcept;
  bool precision_warning() const noexcept;

  /// B(a;b|z) for z in [0, 1]. Throws DomainError outside.
  EvalResult evaluate(double z) const;
  double value(double z) const;
  double log_value(double z) const;

  /// B(a_1..a_m ; b_1..b_m | z); m = 0 gives 1 by convention.
  double prefix_value(std::size_t m, double z) const;
  double log_prefix_value(std::size_t m, double z) const;
  /// Same, with the complement zc = 1 - z supplied separately so that values
  /// near z = 1 keep full relative accuracy.
  double prefix_value(std::size_t m, double z, double zc) const;
  /// All prefix values m = 0..n at one z, for the cost of the longest one.
  std::vector<double> prefix_values(double z) const;
  std::vector<double> prefix_values(double z, double zc) const;

  /// B(a_1..a_m ; b_1..b_m | 1).
  double prefix_complete(std::size_t m) const;
  double complete() const;

  /// z^{-A_n} B(a;b|z) on (0, 1/2], straight from the engine.
  double scaled(double z) const;

 private:
  std::shared_ptr<const detail::EvaluatorCore> core_;
};

double beta_scaled(const ParamVector& p, double z, const EvalSettings& settings = {});
EvalResult incomplete_beta(const ParamVector& p, double z, const EvalSettings& settings = {});
double beta_complete(const ParamVector& p, const EvalSettings& settings = {});

/// Residuals of the structural identities at one z in (0, 1). Every entry is
/// relative: the absolute residual divided by the magnitude of the quantity
/// it checks (for the alternating sum, by the largest term).
struct IdentityResiduals {
  /// B(a;b) against B of the reversed-swapped parameters.
  double symmetry = 0.0;
  /// sum_k B(prefix_k|z) B(reflected suffix|1-z) against B(a;b).
  double prefix_suffix_sum = 0.0;
  /// sum_k (-1)^k B(prefix_k|z) B(reversed suffix|z), which vanishes.
  double alternating_sum = 0.0;
  /// B(a;b|z) against the integral of the last kernel times B(prefix_{n-1}|x).
  double last_kernel_integral = 0.0;
  /// Worst over k of B(a;b) against the integral over the k-th marginal kernel.
  double marginal_kernel_integral = 0.0;

  double max() const noexcept;
};

IdentityResiduals identity_residuals(const ParamVector& p, double z,
                                     const EvalSettings& settings = {},
                                     int quadrature_nodes = 128);

}  // namespace obeta
