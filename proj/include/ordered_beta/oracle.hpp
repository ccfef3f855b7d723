#pragma once

#include <cstdint>
#include <string_view>

#include "ordered_beta/params.hpp"

// Reference estimators that share no code path with the series engines:
// nested quadrature straight from the iterated-integral definition, and a
// Monte Carlo acceptance ratio over independent beta draws.

namespace obeta {

enum class OracleKind { quadrature, montecarlo };

std::string_view to_string(OracleKind kind);

struct OracleEstimate {
  double value = 0.0;
  /// Node-doubling difference for quadrature, binomial standard error for
  /// Monte Carlo.
  double error = 0.0;
  OracleKind kind = OracleKind::quadrature;
  std::uint64_t evaluations = 0;
};

/// Gamma(a) Gamma(b) / Gamma(a + b), evaluated in log space. Throws
/// OverflowDomain unless a, b lie in (0, 171).
double classical_beta(double a, double b);
double log_classical_beta(double a, double b);

/// Nested quadrature of B(a;b|z), z in (0, 1], at most 4 parameters
/// (DimensionTooLarge otherwise). The value is taken at 2 * nodes per
/// dimension and the error bound is its difference from the `nodes` result
/// plus a rounding floor of 32 n eps |value|.
OracleEstimate oracle_quadrature(const ParamVector& p, double z, int nodes = 64);

/// B(a;b|z) = prod_i B(a_i, b_i) * P(Y_1 <= ... <= Y_n <= z) with
/// independent Y_i ~ Beta(a_i, b_i). Needs at least 1000 samples.
OracleEstimate oracle_montecarlo(const ParamVector& p, double z, std::uint64_t samples,
                                 std::uint64_t seed);

}  // namespace obeta
