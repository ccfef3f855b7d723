#include "ordered_beta/quadrature.hpp"

#include <algorithm>
#include <numbers>

#include "ordered_beta/errors.hpp"

namespace obeta::quadrature {

Rule gauss_legendre(int count) {
  if (count < 1) throw DomainError("quadrature needs at least one node");
  const std::size_t n = static_cast<std::size_t>(count);
  Rule rule;
  rule.node.resize(n);
  rule.complement.resize(n);
  rule.weight.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double jj = static_cast<double>(j);
        p0 = ((2.0 * jj - 1.0) * x * p1 - (jj - 1.0) * p2) / jj;
      }
      dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      const double jj = static_cast<double>(j);
      p0 = ((2.0 * jj - 1.0) * x * p1 - (jj - 1.0) * p2) / jj;
    }
    dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.node[i] = -x;
    rule.node[n - 1 - i] = x;
    rule.weight[i] = w;
    rule.weight[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.node[n / 2] = 0.0;
  for (std::size_t i = 0; i < n; ++i) rule.complement[i] = 1.0 - rule.node[i];
  return rule;
}

double double_exponential_half_width(double min_exponent) {
  const double alpha = std::clamp(min_exponent, 0.05, 1.0);
  return std::asinh(40.0 / (std::numbers::pi * alpha));
}

Rule double_exponential(int count, double half_width) {
  if (!(half_width > 0.0)) throw DomainError("half width must be positive");
  const Rule base = gauss_legendre(count);
  Rule rule;
  rule.node.resize(base.size());
  rule.complement.resize(base.size());
  rule.weight.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double s = half_width * base.node[i];
    const double u = std::numbers::pi * std::sinh(s);
    const double t = 1.0 / (1.0 + std::exp(-u));
    const double tc = 1.0 / (1.0 + std::exp(u));
    rule.node[i] = t;
    rule.complement[i] = tc;
    rule.weight[i] = half_width * base.weight[i] * std::numbers::pi * std::cosh(s) * t * tc;
  }
  return rule;
}

}  // namespace obeta::quadrature
