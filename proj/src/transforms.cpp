#include "ordered_beta/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

namespace obeta::transforms {

namespace {

// FFTW's planner is not reentrant; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::vector<double> r2r(std::vector<double> in, fftw_r2r_kind kind) {
  const int n = static_cast<int>(in.size());
  std::vector<double> out(in.size());
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_r2r_1d(n, in.data(), out.data(), kind, FFTW_ESTIMATE);
  }
  Plan plan(raw);
  plan.execute();
  return out;
}

}  // namespace

std::vector<double> convolve_direct(std::span<const double> lhs,
                                    std::span<const double> rhs, std::size_t len) {
  std::vector<double> out(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    double acc = 0.0;
    for (std::size_t l = 0; l <= k && l < rhs.size(); ++l) {
      if (k - l < lhs.size()) acc += lhs[k - l] * rhs[l];
    }
    out[k] = acc;
  }
  return out;
}

std::vector<double> convolve_fft(std::span<const double> lhs,
                                 std::span<const double> rhs, std::size_t len) {
  if (len == 0) return {};
  const std::size_t size = 2 * len;
  const std::size_t spectrum = size / 2 + 1;
  std::vector<double> x(size, 0.0), y(size, 0.0), out(size, 0.0);
  std::copy_n(lhs.begin(), std::min(len, lhs.size()), x.begin());
  std::copy_n(rhs.begin(), std::min(len, rhs.size()), y.begin());
  std::vector<std::complex<double>> fx(spectrum), fy(spectrum);
  auto* cx = reinterpret_cast<fftw_complex*>(fx.data());
  auto* cy = reinterpret_cast<fftw_complex*>(fy.data());

  fftw_plan px, py, pinv;
  {
    std::lock_guard lock(planner_mutex());
    const int n = static_cast<int>(size);
    px = fftw_plan_dft_r2c_1d(n, x.data(), cx, FFTW_ESTIMATE);
    py = fftw_plan_dft_r2c_1d(n, y.data(), cy, FFTW_ESTIMATE);
    pinv = fftw_plan_dft_c2r_1d(n, cx, out.data(), FFTW_ESTIMATE);
  }
  Plan fwd_x(px), fwd_y(py), inv(pinv);
  fwd_x.execute();
  fwd_y.execute();
  for (std::size_t i = 0; i < spectrum; ++i) fx[i] *= fy[i];
  inv.execute();

  const double scale = 1.0 / static_cast<double>(size);
  out.resize(len);
  for (double& v : out) v *= scale;
  return out;
}

std::vector<double> cosine_synthesis_direct(std::span<const double> coeffs) {
  const std::size_t m = coeffs.size();
  std::vector<double> v(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.5 * coeffs[0];
    for (std::size_t k = 1; k < m; ++k) {
      acc += coeffs[k] * std::cos(std::numbers::pi * static_cast<double>(k) *
                                  (static_cast<double>(j) + 0.5) / static_cast<double>(m));
    }
    v[j] = acc;
  }
  return v;
}

std::vector<double> cosine_synthesis_fft(std::span<const double> coeffs) {
  if (coeffs.empty()) return {};
  // REDFT01: Y_j = X_0 + 2 sum_{k>=1} X_k cos(pi k (j + 1/2) / M).
  std::vector<double> in(coeffs.begin(), coeffs.end());
  for (double& c : in) c *= 0.5;
  return r2r(std::move(in), FFTW_REDFT01);
}

std::vector<double> cosine_analysis_direct(std::span<const double> values) {
  const std::size_t m = values.size();
  std::vector<double> c(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      acc += values[j] * std::cos(std::numbers::pi * static_cast<double>(k) *
                                  (static_cast<double>(j) + 0.5) / static_cast<double>(m));
    }
    c[k] = 2.0 * acc / static_cast<double>(m);
  }
  return c;
}

std::vector<double> cosine_analysis_fft(std::span<const double> values) {
  if (values.empty()) return {};
  // REDFT10: Y_k = 2 sum_j X_j cos(pi k (j + 1/2) / M).
  auto out = r2r(std::vector<double>(values.begin(), values.end()), FFTW_REDFT10);
  const double scale = 1.0 / static_cast<double>(values.size());
  for (double& c : out) c *= scale;
  return out;
}

}  // namespace obeta::transforms
