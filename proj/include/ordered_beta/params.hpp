#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace obeta {

/// Validated parameter pair (a_1..a_n ; b_1..b_n) of a generalized beta
/// function, together with the prefix sums A_m = a_1 + ... + a_m.
///
/// Instances are immutable once built. The empty parameter list is allowed
/// only through `ParamVector::empty()`; it represents the constant function 1.
class ParamVector {
 public:
  /// Validates and builds. Throws LengthMismatch, NonPositiveParameter or
  /// NonFinite.
  ParamVector(std::vector<double> a, std::vector<double> b);

  static ParamVector empty();

  std::size_t size() const noexcept { return a_.size(); }
  bool is_empty() const noexcept { return a_.empty(); }

  std::span<const double> a() const noexcept { return a_; }
  std::span<const double> b() const noexcept { return b_; }
  double a(std::size_t i) const { return a_.at(i); }
  double b(std::size_t i) const { return b_.at(i); }

  /// prefix_sums()[m-1] = A_m.
  std::span<const double> prefix_sums() const noexcept { return prefix_; }
  /// A_m for 1 <= m <= n; A_0 = 0.
  double prefix_sum(std::size_t m) const { return m == 0 ? 0.0 : prefix_.at(m - 1); }
  double total_a() const noexcept { return prefix_.empty() ? 0.0 : prefix_.back(); }

  /// Largest entry of a and b; used by the precision heuristics.
  double max_parameter() const noexcept;

  /// First m parameters (a_1..a_m ; b_1..b_m).
  ParamVector prefix(std::size_t m) const;

  friend bool operator==(const ParamVector& lhs, const ParamVector& rhs) {
    return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
  }

 private:
  ParamVector() = default;

  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> prefix_;
};

/// Same as the constructor; kept as a free function for call sites that read
/// better with a verb.
ParamVector validate_params(std::vector<double> a, std::vector<double> b);

/// (a ; b) -> (b_n..b_1 ; a_n..a_1). An involution; it maps the parameters of
/// X to those of the reflected vector (1 - X_n, ..., 1 - X_1).
ParamVector reverse_swap(const ParamVector& p);

/// terms[l] = (1 - b)_l / l! for 0 <= l <= N.
struct PochhammerRow {
  double b = 1.0;
  std::vector<double> terms;
};

/// Built by the multiplicative recurrence terms[l] = terms[l-1] (l - b) / l,
/// never by gamma ratios, so large b does not overflow.
PochhammerRow pochhammer_row(double b, int order);

/// Generic version of the row used by the extended-precision kernels.
template <class Real>
std::vector<Real> pochhammer_terms(double b, int order) {
  std::vector<Real> terms(static_cast<std::size_t>(order) + 1);
  terms[0] = Real(1);
  const Real bb(b);
  for (int l = 1; l <= order; ++l) {
    terms[l] = terms[l - 1] * (Real(l) - bb) / Real(l);
  }
  return terms;
}

}  // namespace obeta
