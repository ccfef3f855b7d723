#include "ordered_beta/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ordered_beta/errors.hpp"

namespace obeta {

namespace {

void check_entries(const std::vector<double>& values, const char* name) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << name << "[" << i + 1 << "] is not finite";
      throw NonFinite(os.str());
    }
    if (v <= 0.0) {
      std::ostringstream os;
      os << name << "[" << i + 1 << "] = " << v << " must be positive";
      throw NonPositiveParameter(os.str());
    }
  }
}

}  // namespace

ParamVector::ParamVector(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) {
    std::ostringstream os;
    os << "parameter lengths differ: a has " << a_.size() << ", b has " << b_.size();
    throw LengthMismatch(os.str());
  }
  if (a_.empty()) {
    throw LengthMismatch("parameter sequences must be non-empty");
  }
  check_entries(a_, "a");
  check_entries(b_, "b");
  prefix_.resize(a_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    acc += a_[i];
    prefix_[i] = acc;
  }
}

ParamVector ParamVector::empty() { return ParamVector(); }

double ParamVector::max_parameter() const noexcept {
  double m = 0.0;
  for (double v : a_) m = std::max(m, v);
  for (double v : b_) m = std::max(m, v);
  return m;
}

ParamVector ParamVector::prefix(std::size_t m) const {
  if (m > size()) throw LengthMismatch("prefix longer than parameter list");
  ParamVector out;
  out.a_.assign(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(m));
  out.b_.assign(b_.begin(), b_.begin() + static_cast<std::ptrdiff_t>(m));
  out.prefix_.assign(prefix_.begin(), prefix_.begin() + static_cast<std::ptrdiff_t>(m));
  return out;
}

ParamVector validate_params(std::vector<double> a, std::vector<double> b) {
  return ParamVector(std::move(a), std::move(b));
}

ParamVector reverse_swap(const ParamVector& p) {
  if (p.is_empty()) return ParamVector::empty();
  std::vector<double> a(p.b().rbegin(), p.b().rend());
  std::vector<double> b(p.a().rbegin(), p.a().rend());
  return ParamVector(std::move(a), std::move(b));
}

PochhammerRow pochhammer_row(double b, int order) {
  if (order < 0) throw DomainError("pochhammer_row: order must be non-negative");
  if (!std::isfinite(b)) throw NonFinite("pochhammer_row: b is not finite");
  if (b <= 0.0) throw NonPositiveParameter("pochhammer_row: b must be positive");
  return PochhammerRow{b, pochhammer_terms<double>(b, order)};
}

}  // namespace obeta
