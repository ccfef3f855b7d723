#include "ordered_beta/taylor.hpp"

#include <cmath>

namespace obeta {

int taylor_default_order(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("tolerance must lie in (0, 1)");
  return static_cast<int>(std::ceil(std::log2(1.0 / eps))) + 10;
}

bool taylor_precision_warning(const ParamVector& p, const PrecisionConfig& precision,
                              const TaylorOptions& options) {
  return !precision.is_extended() && p.max_parameter() > options.warning_threshold;
}

template struct BasicTaylorTable<double>;
template struct BasicTaylorTable<ExtendedReal>;

}  // namespace obeta
