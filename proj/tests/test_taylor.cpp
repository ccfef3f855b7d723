#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ordered_beta/beta_eval.hpp"
#include "ordered_beta/errors.hpp"
#include "ordered_beta/oracle.hpp"
#include "ordered_beta/quadrature.hpp"
#include "ordered_beta/taylor.hpp"
#include "support.hpp"

using namespace obeta;

namespace {

// beta(a; b | z) = int_0^1 y^{a-1} (1 - y z)^{b-1} dy, for |z| < 1.
double scaled_by_quadrature(double a, double b, double z) {
  static const auto rule =
      quadrature::double_exponential(160, quadrature::double_exponential_half_width(a));
  return quadrature::integrate(rule, [&](double y, double) {
    return std::exp((a - 1.0) * std::log(y) + (b - 1.0) * std::log1p(-y * z));
  });
}

// Second Taylor coefficient from symmetric differences, one Richardson step.
double second_coefficient(double a, double b) {
  const auto d2 = [&](double h) {
    return (scaled_by_quadrature(a, b, h) + scaled_by_quadrature(a, b, -h) -
            2.0 * scaled_by_quadrature(a, b, 0.0)) /
           (2.0 * h * h);
  };
  const double h = 0.02;
  return (4.0 * d2(h / 2) - d2(h)) / 3.0;
}

}  // namespace

TEST_CASE("base coefficients, closed forms") {
  CHECK(taylor_base_coeffs(1.0, 1.0, 3) == std::vector<double>{1, 0, 0, 0});
  CHECK(taylor_base_coeffs(1.0, 2.0, 3) == std::vector<double>{1, -0.5, 0, 0});
  CHECK(taylor_base_coeffs(1.0, 1.0, 0).size() == 1);
  CHECK_THROWS_AS(taylor_base_coeffs(1.0, 1.0, -1), DomainError);
}

TEST_CASE("base coefficients for a1 = 0.8, b1 = 0.4") {
  const auto c = taylor_base_coeffs(0.8, 0.4, 2);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // (0.6)(1.6) / 2 / 2.8
  CHECK(c[2] == doctest::Approx(0.96 / 5.6).epsilon(1e-15));

  // Independent check: the series against the defining integral.
  CHECK(std::abs(c[0] - scaled_by_quadrature(0.8, 0.4, 0.0)) < 1e-13);
  CHECK(std::abs(c[2] - second_coefficient(0.8, 0.4)) < 1e-7);
  for (double z : {0.05, 0.2, 0.45}) {
    const auto full = taylor_base_coeffs(0.8, 0.4, 80);
    double sum = 0.0;
    for (auto it = full.rbegin(); it != full.rend(); ++it) sum = sum * z + *it;
    CHECK(testing::rel(sum, scaled_by_quadrature(0.8, 0.4, z)) < 1e-12);
  }
}

TEST_CASE("lift examples") {
  const std::vector<double> unit{1, 0, 0, 0, 0};
  const auto uniform = taylor_lift<double>(unit, 2.0, 1.0, 4);
  CHECK(uniform == std::vector<double>{0.5, 0, 0, 0, 0});

  const auto linear = taylor_lift<double>(unit, 2.0, 2.0, 4);
  CHECK(linear[0] == 0.5);
  CHECK(linear[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  for (int k = 2; k <= 4; ++k) CHECK(linear[k] == 0.0);

  CHECK_THROWS_AS(taylor_lift<double>(unit, 2.0, 1.0, 3), LengthMismatch);
  CHECK_THROWS_AS(taylor_lift<double>(unit, 0.0, 1.0, 4), NonPositiveParameter);
}

TEST_CASE("leading coefficient is the product of 1/A_m") {
  const auto p = testing::set1();
  const auto t = taylor_pipeline(p, 40);
  double c0 = 1.0;
  for (std::size_t m = 1; m <= p.size(); ++m) c0 /= p.prefix_sum(m);
  CHECK(t.coeffs.size() == 41);
  CHECK(testing::rel(t.coeffs[0], c0) < 1e-15);
}

TEST_CASE("one-parameter pipeline is the base row") {
  const auto t = taylor_pipeline(ParamVector({0.8}, {0.4}), 30);
  CHECK(t.coeffs == taylor_base_coeffs(0.8, 0.4, 30));
  CHECK(t.order == 30);
  CHECK_FALSE(t.precision_warning);
}

TEST_CASE("FFT and direct lifts agree") {
  std::mt19937_64 rng(17);
  TaylorOptions direct;
  direct.fft_crossover = 1 << 30;
  TaylorOptions fft;
  fft.fft_crossover = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_params(rng, 2 + trial % 3, 0.1, 5.0);
    const int order = 65 + 10 * trial;
    const auto a = taylor_pipeline(p, order, direct).coeffs;
    const auto b = taylor_pipeline(p, order, fft).coeffs;
    // FFT rounding is normwise: relative per coefficient until the
    // coefficients fall far below the leading one.
    double largest = 0.0;
    for (double v : a) largest = std::max(largest, std::abs(v));
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(std::abs(a[k] - b[k]) <= 1e-12 * std::abs(a[k]) + 1e-15 * largest);
    }
  }
}

TEST_CASE("integer b gives a polynomial") {
  const ParamVector p({0.7, 1.3, 2.2}, {2.0, 3.0, 1.0});
  const auto c = taylor_pipeline(p, 20).coeffs;
  const int degree = (2 - 1) + (3 - 1) + (1 - 1);
  double largest = 0.0;
  for (double v : c) largest = std::max(largest, std::abs(v));
  for (int k = degree + 1; k <= 20; ++k) CHECK(std::abs(c[k]) < 1e-14 * largest);
  CHECK(std::abs(c[degree]) > 1e-6 * largest);
}

TEST_CASE("coefficients decay") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_params(rng, 1 + trial % 4, 0.1, 5.0);
    for (int order : {64, 128}) {
      const auto c = taylor_pipeline(p, order).coeffs;
      CHECK(std::abs(c[order]) < std::abs(c[0]));
    }
  }
}

TEST_CASE("evaluation examples") {
  const auto one = taylor_pipeline(ParamVector({1.0}, {1.0}), 8);
  for (double z : {0.01, 0.3, 0.5}) CHECK(taylor_eval(one, z) == 1.0);
  const auto lin = taylor_pipeline(ParamVector({1.0}, {2.0}), 8);
  CHECK(taylor_eval(lin, 0.4) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(taylor_eval(one, 0.0), DomainError);
  CHECK_THROWS_AS(taylor_eval(one, 0.51), DomainError);
}

TEST_CASE("scaling identity against the quadrature oracle") {
  const ParamVector p({0.5, 1.5}, {2.0, 1.0});
  const double z = 0.3;
  const auto t = taylor_pipeline(p, 80);
  const double value = taylor_eval(t, z) * std::pow(z, p.total_a());
  const auto ref = oracle_quadrature(p, z);
  CHECK(testing::rel(value, ref.value) < 1e-10);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    const auto q = testing::random_params(rng, 1 + trial % 3, 0.3, 3.0);
    const double zz = 0.1 + 0.07 * trial;
    const double v = taylor_eval(taylor_pipeline(q, 80), zz) * std::pow(zz, q.total_a());
    const auto o = oracle_quadrature(q, zz);
    CHECK(std::abs(v - o.value) <= o.error + 1e-14 * o.value);
  }
}

TEST_CASE("large parameters flag a precision warning in double only") {
  CHECK(taylor_pipeline(testing::set2(), 16).precision_warning);
  CHECK_FALSE(taylor_pipeline<ExtendedReal>(testing::set2(), 16).precision_warning);
  CHECK_FALSE(taylor_pipeline(testing::set1(), 16).precision_warning);
  TaylorOptions loose;
  loose.warning_threshold = 100.0;
  CHECK_FALSE(taylor_pipeline(testing::set2(), 16, loose).precision_warning);
}

TEST_CASE("extended kernel matches double where double is accurate") {
  const auto p = testing::set1();
  const auto d = taylor_pipeline(p, 60).coeffs;
  const auto e = taylor_pipeline<ExtendedReal>(p, 60).coeffs;
  for (std::size_t k = 0; k < d.size(); ++k) {
    CHECK(testing::rel(d[k], static_cast<double>(e[k])) < 1e-12);
  }
}

TEST_CASE("default orders") {
  CHECK(taylor_default_order(1e-12) == 50);
  CHECK(taylor_default_order(0.5) == 11);
}

TEST_CASE("published sets through the Taylor engine") {
  EvalSettings s;
  s.method = Method::taylor;
  s.order = 500;
  s.precision = PrecisionConfig::extended();
  CHECK(testing::rel(beta_complete(testing::set1(), s), testing::kSet1) < 1e-14);

  s.order = 200;
  CHECK(testing::rel(beta_complete(testing::set2(), s), testing::kSet2) < 1e-12);

  s.precision = PrecisionConfig::machine();
  const double lossy = beta_complete(testing::set2(), s);
  CHECK(testing::rel(lossy, testing::kSet2) < 1e-4);

  s.order = 50;
  CHECK(testing::rel(beta_complete(testing::set3(), s), testing::kSet3) < 1e-11);
}
