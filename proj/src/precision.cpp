#include "ordered_beta/precision.hpp"

#include <string>

#include "ordered_beta/errors.hpp"

namespace obeta {

void PrecisionConfig::validate() const {
  if (mode == PrecisionMode::extended &&
      (digits < 16 || digits > kExtendedDigits)) {
    throw DomainError("extended precision digits must lie in [16, " +
                      std::to_string(kExtendedDigits) + "], got " +
                      std::to_string(digits));
  }
}

std::string_view to_string(PrecisionMode mode) {
  return mode == PrecisionMode::extended ? "extended" : "double";
}

std::optional<PrecisionMode> parse_precision_mode(std::string_view text) {
  if (text == "double" || text == "machine" || text == "machine-double") {
    return PrecisionMode::machine_double;
  }
  if (text == "extended") return PrecisionMode::extended;
  return std::nullopt;
}

}  // namespace obeta
