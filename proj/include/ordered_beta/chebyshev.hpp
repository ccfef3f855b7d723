#pragma once

#include <span>
#include <vector>

#include "ordered_beta/params.hpp"

// Chebyshev engine for the scaled function on z in (0, 1/2], expanded in the
// shifted basis T_k(4z - 1) with the halved-first-coefficient convention
//   beta(z) = xi_0 / 2 + sum_{k>=1} xi_k T_k(4z - 1).
//
// Adding parameter m means solving A_m F + z F' = (1 - z)^{b_m - 1} f for F
// given f. One stage is: values of f at the half-sample nodes, weighted
// cosine analysis, a backward three-term recursion for the coefficients of
// F', then integration of that series.

namespace obeta {

struct ChebOptions {
  /// Transforms of size N + 1 >= fft_crossover use the FFT.
  int fft_crossover = 32;
};

struct ChebTable {
  ParamVector params;
  int order = 0;
  std::vector<double> coeffs;
};

struct ChebNodes {
  int order = 0;
  /// x_j = cos(pi (j + 1/2) / (N + 1)), strictly decreasing.
  std::vector<double> x;
  /// z_j = (1 + x_j) / 4, inside (0, 1/2).
  std::vector<double> z;
};

ChebNodes cheb_nodes(int order);

/// Order that meets tolerance eps from the 5.8^-N coefficient decay, with
/// eight guard terms.
int cheb_default_order(double eps);

/// v_j = coeffs_0 / 2 + sum_k coeffs_k cos(pi k (j + 1/2) / (N + 1)).
std::vector<double> cheb_synthesis(std::span<const double> coeffs,
                                   const ChebOptions& options = {});

/// eta_k = 2/(N+1) sum_j (1 - z_j)^{b_m - 1} v_j cos(pi k (j + 1/2) / (N + 1)).
std::vector<double> cheb_analysis(std::span<const double> values, double b_m,
                                  const ChebOptions& options = {});

/// mu_{k-1} = (8 eta_k - 2 mu_k - mu_{k+1} (1 - A/k)) / (1 + A/k), k = N..1,
/// started from (mu_N, mu_{N+1}) = seed. Returns mu_0..mu_{N+1}.
std::vector<double> cheb_backward_recursion(std::span<const double> eta, double prefix_sum,
                                            double seed_n = 0.0, double seed_n1 = 0.0);

/// xi_0 = (eta_0 - (mu_0 + mu_1) / 4) / A, xi_k = (mu_{k-1} - mu_{k+1}) / (8k).
std::vector<double> cheb_assemble(double eta0, std::span<const double> mu, double prefix_sum,
                                  int order);

/// One full stage: coefficients of the (m-1)-prefix to those of the m-prefix.
std::vector<double> cheb_stage(std::span<const double> prev, double prefix_sum, double b_m,
                               const ChebOptions& options = {}, double seed_n = 0.0,
                               double seed_n1 = 0.0);

/// Coefficients of the empty prefix: the constant 1, i.e. [2, 0, ..., 0].
std::vector<double> cheb_unit(int order);

std::vector<ChebTable> cheb_prefix_tables(const ParamVector& p, int order,
                                          const ChebOptions& options = {});
ChebTable cheb_pipeline(const ParamVector& p, int order, const ChebOptions& options = {});

/// Clenshaw sum at argument 4z - 1, z in (0, 1/2].
double cheb_eval(const ChebTable& table, double z);
double cheb_eval(std::span<const double> coeffs, double z);

}  // namespace obeta
