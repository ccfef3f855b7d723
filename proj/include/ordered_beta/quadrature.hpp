#pragma once

#include <cmath>
#include <vector>

// Quadrature rules on (0, 1) for integrands with algebraic endpoint
// singularities such as t^{a-1} (1-t)^{b-1} g(t).
//
// The double-exponential substitution t = sigma(pi sinh s), sigma the
// logistic function, turns any such endpoint behaviour into double-exponential
// decay in s; a Gauss-Legendre rule on the truncated s-interval then
// converges geometrically. Nodes carry their complements 1 - t, computed
// without cancellation, so factors (1 - t)^{b-1} stay accurate near t = 1.

namespace obeta::quadrature {

struct Rule {
  std::vector<double> node;
  std::vector<double> complement;
  std::vector<double> weight;

  std::size_t size() const noexcept { return node.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1] (complement unused).
Rule gauss_legendre(int count);

/// Half-width of the truncated s-interval: sigma(-pi sinh L)^alpha_min must
/// fall below double precision.
double double_exponential_half_width(double min_exponent);

/// Rule on (0, 1) with `count` Gauss-Legendre nodes in s.
Rule double_exponential(int count, double half_width = 5.0);

/// Sum of weight_i f(node_i, complement_i).
template <class F>
double integrate(const Rule& rule, F&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    acc += rule.weight[i] * f(rule.node[i], rule.complement[i]);
  }
  return acc;
}

}  // namespace obeta::quadrature
