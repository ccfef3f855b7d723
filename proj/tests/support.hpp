#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ordered_beta/params.hpp"

namespace testing {

// Reference values of the complete function for the three published sets.
inline constexpr double kSet1 = 0.4868940470437834231542713481277;
inline constexpr double kSet2 = 9.9752436394601281551585749018468e-6;
inline constexpr double kSet3 = 4.2217553528914884124401921234246e-33;

inline obeta::ParamVector set1() { return {{0.8, 0.3, 1.5}, {0.4, 1.7, 0.8}}; }
inline obeta::ParamVector set2() { return {{50.8, 0.3, 1.5}, {0.4, 1.7, 0.8}}; }

inline obeta::ParamVector set3() {
  std::vector<double> a(100), b(100);
  for (int i = 1; i <= 100; ++i) {
    a[i - 1] = (2.0 * i - 1.0) / 200.0;
    b[i - 1] = 1.0 - a[i - 1];
  }
  return {std::move(a), std::move(b)};
}

inline obeta::ParamVector uniform(std::size_t n) {
  return {std::vector<double>(n, 1.0), std::vector<double>(n, 1.0)};
}

inline double rel(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

inline obeta::ParamVector random_params(std::mt19937_64& rng, std::size_t n, double lo,
                                        double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = u(rng);
    b[i] = u(rng);
  }
  return {std::move(a), std::move(b)};
}

}  // namespace testing
