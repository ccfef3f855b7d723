#include "ordered_beta/chebyshev.hpp"

#include <cmath>
#include <numbers>

#include "ordered_beta/errors.hpp"
#include "ordered_beta/transforms.hpp"

namespace obeta {

namespace {

void check_order(int order) {
  if (order < 0) throw DomainError("chebyshev order must be non-negative");
}

bool use_fft(std::size_t size, const ChebOptions& options) {
  return static_cast<int>(size) >= options.fft_crossover;
}

}  // namespace

ChebNodes cheb_nodes(int order) {
  check_order(order);
  ChebNodes nodes;
  nodes.order = order;
  const std::size_t m = static_cast<std::size_t>(order) + 1;
  nodes.x.resize(m);
  nodes.z.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) /
                              static_cast<double>(m));
    nodes.x[j] = x;
    nodes.z[j] = 0.25 * (1.0 + x);
  }
  return nodes;
}

int cheb_default_order(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("tolerance must lie in (0, 1)");
  return static_cast<int>(std::ceil(std::log(1.0 / eps) / std::log(5.0))) + 8;
}

std::vector<double> cheb_synthesis(std::span<const double> coeffs, const ChebOptions& options) {
  return use_fft(coeffs.size(), options) ? transforms::cosine_synthesis_fft(coeffs)
                                         : transforms::cosine_synthesis_direct(coeffs);
}

std::vector<double> cheb_analysis(std::span<const double> values, double b_m,
                                  const ChebOptions& options) {
  if (values.empty()) return {};
  const auto nodes = cheb_nodes(static_cast<int>(values.size()) - 1);
  std::vector<double> weighted(values.begin(), values.end());
  if (b_m != 1.0) {
    for (std::size_t j = 0; j < weighted.size(); ++j) {
      weighted[j] *= std::exp((b_m - 1.0) * std::log1p(-nodes.z[j]));
    }
  }
  return use_fft(weighted.size(), options) ? transforms::cosine_analysis_fft(weighted)
                                           : transforms::cosine_analysis_direct(weighted);
}

std::vector<double> cheb_backward_recursion(std::span<const double> eta, double prefix_sum,
                                            double seed_n, double seed_n1) {
  if (eta.empty()) throw LengthMismatch("backward recursion needs N + 1 coefficients");
  if (!(prefix_sum > 0.0)) throw NonPositiveParameter("backward recursion: A_m must be positive");
  const std::size_t n = eta.size() - 1;
  std::vector<double> mu(n + 2, 0.0);
  mu[n] = seed_n;
  mu[n + 1] = seed_n1;
  for (std::size_t k = n; k >= 1; --k) {
    const double ratio = prefix_sum / static_cast<double>(k);
    mu[k - 1] = (8.0 * eta[k] - 2.0 * mu[k] - mu[k + 1] * (1.0 - ratio)) / (1.0 + ratio);
  }
  return mu;
}

std::vector<double> cheb_assemble(double eta0, std::span<const double> mu, double prefix_sum,
                                  int order) {
  check_order(order);
  const std::size_t n = static_cast<std::size_t>(order);
  if (mu.size() < n + 2) throw LengthMismatch("cheb_assemble: mu needs N + 2 entries");
  std::vector<double> xi(n + 1);
  xi[0] = (eta0 - 0.25 * (mu[0] + mu[1])) / prefix_sum;
  for (std::size_t k = 1; k <= n; ++k) {
    xi[k] = (mu[k - 1] - mu[k + 1]) / (8.0 * static_cast<double>(k));
  }
  return xi;
}

std::vector<double> cheb_stage(std::span<const double> prev, double prefix_sum, double b_m,
                               const ChebOptions& options, double seed_n, double seed_n1) {
  const auto values = cheb_synthesis(prev, options);
  const auto eta = cheb_analysis(values, b_m, options);
  const auto mu = cheb_backward_recursion(eta, prefix_sum, seed_n, seed_n1);
  return cheb_assemble(eta[0], mu, prefix_sum, static_cast<int>(prev.size()) - 1);
}

std::vector<double> cheb_unit(int order) {
  check_order(order);
  std::vector<double> coeffs(static_cast<std::size_t>(order) + 1, 0.0);
  coeffs[0] = 2.0;
  return coeffs;
}

std::vector<ChebTable> cheb_prefix_tables(const ParamVector& p, int order,
                                          const ChebOptions& options) {
  check_order(order);
  if (p.is_empty()) throw LengthMismatch("chebyshev pipeline needs at least one parameter");
  std::vector<ChebTable> tables;
  tables.reserve(p.size());
  auto coeffs = cheb_unit(order);
  for (std::size_t m = 1; m <= p.size(); ++m) {
    coeffs = cheb_stage(coeffs, p.prefix_sum(m), p.b(m - 1), options);
    tables.push_back({p.prefix(m), order, coeffs});
  }
  return tables;
}

ChebTable cheb_pipeline(const ParamVector& p, int order, const ChebOptions& options) {
  auto tables = cheb_prefix_tables(p, order, options);
  return std::move(tables.back());
}

double cheb_eval(std::span<const double> coeffs, double z) {
  if (!(z > 0.0 && z <= 0.5)) throw DomainError("cheb_eval: z must lie in (0, 1/2]");
  if (coeffs.empty()) return 0.0;
  const double t = 4.0 * z - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
    const double b0 = coeffs[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return 0.5 * coeffs[0] + t * b1 - b2;
}

double cheb_eval(const ChebTable& table, double z) { return cheb_eval(table.coeffs, z); }

}  // namespace obeta
