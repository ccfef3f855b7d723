#include "ordered_beta/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ordered_beta/errors.hpp"
#include "ordered_beta/quadrature.hpp"

namespace obeta {

std::string_view to_string(OracleKind kind) {
  return kind == OracleKind::quadrature ? "quadrature" : "montecarlo";
}

double log_classical_beta(double a, double b) {
  if (!(a > 0.0 && a < 171.0 && b > 0.0 && b < 171.0)) {
    throw OverflowDomain("classical beta needs a, b in (0, 171)");
  }
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double classical_beta(double a, double b) { return std::exp(log_classical_beta(a, b)); }

namespace {

class NestedQuadrature {
 public:
  NestedQuadrature(const ParamVector& p, const quadrature::Rule& rule) : p_(p), rule_(rule) {}

  // B(prefix_m | x), with xc = 1 - x passed in exactly.
  double value(std::size_t m, double x, double xc) {
    if (m == 0) return 1.0;
    const double a = p_.a(m - 1), b = p_.b(m - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      const double y = x * rule_.node[i];
      const double yc = xc + x * rule_.complement[i];
      // Underflowed nodes carry no mass.
      if (y <= 0.0 || yc <= 0.0) continue;
      ++evaluations_;
      const double k = std::exp((a - 1.0) * std::log(y) + (b - 1.0) * std::log(yc));
      acc += rule_.weight[i] * k * value(m - 1, y, yc);
    }
    return x * acc;
  }

  std::uint64_t evaluations() const noexcept { return evaluations_; }

 private:
  const ParamVector& p_;
  const quadrature::Rule& rule_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace

OracleEstimate oracle_quadrature(const ParamVector& p, double z, int nodes) {
  if (p.size() > 4) throw DimensionTooLarge("quadrature oracle supports at most 4 parameters");
  if (!(z > 0.0 && z <= 1.0)) throw DomainError("quadrature oracle needs z in (0, 1]");
  if (nodes < 2) throw DomainError("quadrature oracle needs at least 2 nodes");

  double min_exponent = 1.0;
  for (double v : p.a()) min_exponent = std::min(min_exponent, v);
  for (double v : p.b()) min_exponent = std::min(min_exponent, v);
  const double width = quadrature::double_exponential_half_width(min_exponent);

  const auto coarse_rule = quadrature::double_exponential(nodes, width);
  const auto fine_rule = quadrature::double_exponential(2 * nodes, width);
  NestedQuadrature coarse(p, coarse_rule), fine(p, fine_rule);
  const double q1 = coarse.value(p.size(), z, 1.0 - z);
  const double q2 = fine.value(p.size(), z, 1.0 - z);
  // Both rules can round to the same double; the floor covers the rounding
  // of n nested sums that the doubling difference cannot see.
  const double rounding = 32.0 * static_cast<double>(p.size()) *
                          std::numeric_limits<double>::epsilon() * std::abs(q2);
  return {q2, std::abs(q2 - q1) + rounding, OracleKind::quadrature,
          coarse.evaluations() + fine.evaluations()};
}

OracleEstimate oracle_montecarlo(const ParamVector& p, double z, std::uint64_t samples,
                                 std::uint64_t seed) {
  if (samples < 1000) throw DomainError("Monte Carlo oracle needs at least 1000 samples");
  if (!(z > 0.0 && z <= 1.0)) throw DomainError("Monte Carlo oracle needs z in (0, 1]");

  const std::size_t n = p.size();
  double log_scale = 0.0;
  std::vector<std::gamma_distribution<double>> ga, gb;
  for (std::size_t i = 0; i < n; ++i) {
    log_scale += log_classical_beta(p.a(i), p.b(i));
    ga.emplace_back(p.a(i), 1.0);
    gb.emplace_back(p.b(i), 1.0);
  }

  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0, draws = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    double previous = 0.0;
    bool accepted = true;
    // Coordinates are drawn in order; the first violation rejects.
    for (std::size_t i = 0; i < n; ++i) {
      const double x = ga[i](rng);
      const double y = gb[i](rng);
      ++draws;
      const double v = x / (x + y);
      if (v < previous) {
        accepted = false;
        break;
      }
      previous = v;
    }
    if (accepted && previous <= z) ++hits;
  }

  const double scale = std::exp(log_scale);
  const double count = static_cast<double>(samples);
  const double freq = static_cast<double>(hits) / count;
  // With no hit (or all hits) the plain binomial error collapses to zero;
  // use the add-one frequency so the reported error still covers the value.
  const double spread =
      (hits == 0 || hits == samples) ? (static_cast<double>(hits) + 1.0) / (count + 2.0) : freq;
  const double stderr_value = scale * std::sqrt(spread * (1.0 - spread) / count);
  return {scale * freq, stderr_value, OracleKind::montecarlo, draws};
}

}  // namespace obeta
