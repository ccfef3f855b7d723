#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Spectral kernels shared by the two engines: truncated polynomial products
// and the cosine transforms at half-sample nodes. Each has an FFT path and a
// direct path; the direct paths are exact-order references for tests.

namespace obeta::transforms {

/// out[k] = sum_{l=0}^{k} lhs[k-l] * rhs[l], 0 <= k < len.
std::vector<double> convolve_direct(std::span<const double> lhs,
                                    std::span<const double> rhs, std::size_t len);
std::vector<double> convolve_fft(std::span<const double> lhs,
                                 std::span<const double> rhs, std::size_t len);

/// Inverse cosine transform at half-sample nodes, M = coeffs.size():
///   v_j = coeffs_0 / 2 + sum_{k>=1} coeffs_k cos(pi k (j + 1/2) / M).
std::vector<double> cosine_synthesis_direct(std::span<const double> coeffs);
std::vector<double> cosine_synthesis_fft(std::span<const double> coeffs);

/// Forward transform, the inverse of the synthesis above:
///   c_k = (2 / M) sum_j values_j cos(pi k (j + 1/2) / M).
std::vector<double> cosine_analysis_direct(std::span<const double> values);
std::vector<double> cosine_analysis_fft(std::span<const double> values);

}  // namespace obeta::transforms
