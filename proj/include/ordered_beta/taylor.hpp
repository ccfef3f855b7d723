#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <type_traits>
#include <vector>

#include "ordered_beta/errors.hpp"
#include "ordered_beta/params.hpp"
#include "ordered_beta/precision.hpp"
#include "ordered_beta/transforms.hpp"

// Power-series engine for the scaled function
//   beta(a;b|z) = z^{-A_n} B(a;b|z) = sum_k c_k z^k,   |z| < 1.
// The coefficients of the one-parameter function come from the binomial
// series; every further parameter is added by a truncated convolution with
// the row (1 - b_m)_l / l! followed by the division by k + A_m.
//
// The recursion is generic over the arithmetic type. In double precision the
// alternating Pochhammer rows of large parameters cancel badly, so callers
// with max(a_i, b_i) above a few tens should switch to ExtendedReal.

namespace obeta {

struct TaylorOptions {
  /// Lifts with order > fft_crossover convolve through the FFT (double only),
  /// provided every |(1 - b_m)_l / l!| stays below fft_row_limit. The FFT
  /// error is normwise, so rows with a large dynamic range (large b_m) would
  /// swamp the small coefficients; those lifts use the direct sum.
  int fft_crossover = 64;
  double fft_row_limit = 1e3;
  /// Machine-double pipelines flag a precision warning above this parameter.
  double warning_threshold = 20.0;
};

template <class Real>
struct BasicTaylorTable {
  ParamVector params;
  int order = 0;
  std::vector<Real> coeffs;
  PrecisionConfig precision;
  bool precision_warning = false;
};

using TaylorTable = BasicTaylorTable<double>;
using ExtendedTaylorTable = BasicTaylorTable<ExtendedReal>;

template <class Real>
PrecisionConfig precision_of() {
  if constexpr (std::is_same_v<Real, double>) {
    return PrecisionConfig::machine();
  } else {
    return PrecisionConfig::extended(kExtendedDigits);
  }
}

/// Order that meets tolerance eps at z <= 1/2 from the 2^-N truncation
/// estimate, plus ten guard terms for the unknown constant.
int taylor_default_order(double eps);

/// True when a machine-double pipeline over p would be flagged.
bool taylor_precision_warning(const ParamVector& p, const PrecisionConfig& precision,
                              const TaylorOptions& options = {});

/// c_k = (1 - b1)_k / ((a1 + k) k!), 0 <= k <= order.
template <class Real = double>
std::vector<Real> taylor_base_coeffs(double a1, double b1, int order) {
  if (order < 0) throw DomainError("taylor order must be non-negative");
  auto row = pochhammer_terms<Real>(b1, order);
  const Real a(a1);
  for (int k = 0; k <= order; ++k) row[k] /= a + Real(k);
  return row;
}

/// One lifting step: c_k <- (1 / (k + A_m)) sum_{l<=k} prev_{k-l} (1 - b_m)_l / l!.
template <class Real = double>
std::vector<Real> taylor_lift(std::span<const Real> prev, double prefix_sum, double b_m,
                              int order, const TaylorOptions& options = {}) {
  if (order < 0) throw DomainError("taylor order must be non-negative");
  if (prev.size() != static_cast<std::size_t>(order) + 1) {
    throw LengthMismatch("taylor_lift: previous coefficients must have order + 1 entries");
  }
  if (!(prefix_sum > 0.0)) throw NonPositiveParameter("taylor_lift: A_m must be positive");
  const auto row = pochhammer_terms<Real>(b_m, order);
  const std::size_t len = static_cast<std::size_t>(order) + 1;

  std::vector<Real> out;
  if constexpr (std::is_same_v<Real, double>) {
    double largest = 0.0;
    for (double v : row) largest = std::max(largest, std::abs(v));
    const bool fft = order > options.fft_crossover && largest <= options.fft_row_limit;
    out = fft ? transforms::convolve_fft(prev, row, len)
              : transforms::convolve_direct(prev, row, len);
  } else {
    out.assign(len, Real(0));
    for (std::size_t k = 0; k < len; ++k) {
      Real acc(0);
      for (std::size_t l = 0; l <= k; ++l) acc += prev[k - l] * row[l];
      out[k] = acc;
    }
  }
  const Real shift(prefix_sum);
  for (std::size_t k = 0; k < len; ++k) out[k] /= Real(static_cast<double>(k)) + shift;
  return out;
}

/// Tables for every prefix (a_1..a_m ; b_1..b_m), m = 1..n, in one sweep.
template <class Real = double>
std::vector<BasicTaylorTable<Real>> taylor_prefix_tables(const ParamVector& p, int order,
                                                         const TaylorOptions& options = {}) {
  if (p.is_empty()) throw LengthMismatch("taylor pipeline needs at least one parameter");
  const PrecisionConfig precision = precision_of<Real>();
  const bool warn = taylor_precision_warning(p, precision, options);

  std::vector<BasicTaylorTable<Real>> tables;
  tables.reserve(p.size());
  auto coeffs = taylor_base_coeffs<Real>(p.a(0), p.b(0), order);
  for (std::size_t m = 1; m <= p.size(); ++m) {
    if (m > 1) {
      coeffs = taylor_lift<Real>(coeffs, p.prefix_sum(m), p.b(m - 1), order, options);
    }
    tables.push_back({p.prefix(m), order, coeffs, precision, warn});
  }
  return tables;
}

template <class Real = double>
BasicTaylorTable<Real> taylor_pipeline(const ParamVector& p, int order,
                                       const TaylorOptions& options = {}) {
  auto tables = taylor_prefix_tables<Real>(p, order, options);
  return std::move(tables.back());
}

/// Horner evaluation of the truncated series at z in (0, 1/2].
template <class Real>
Real taylor_eval(const BasicTaylorTable<Real>& table, double z) {
  if (!(z > 0.0 && z <= 0.5)) throw DomainError("taylor_eval: z must lie in (0, 1/2]");
  const Real x(z);
  Real acc(0);
  for (auto it = table.coeffs.rbegin(); it != table.coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace obeta
