#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace obeta {

/// Working type of the extended-precision kernel: 120 significant decimal
/// digits, expression templates off so generic code can use `auto` freely.
using ExtendedReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<120>, boost::multiprecision::et_off>;

inline constexpr int kExtendedDigits = 120;

enum class PrecisionMode { machine_double, extended };

struct PrecisionConfig {
  PrecisionMode mode = PrecisionMode::machine_double;
  /// Requested decimal digits; meaningful in extended mode only, where it
  /// must lie in [16, kExtendedDigits].
  int digits = 16;

  static PrecisionConfig machine() { return {}; }
  static PrecisionConfig extended(int digits = kExtendedDigits) {
    return {PrecisionMode::extended, digits};
  }

  bool is_extended() const noexcept { return mode == PrecisionMode::extended; }

  /// Throws DomainError when the digit count is out of range.
  void validate() const;

  friend bool operator==(const PrecisionConfig&, const PrecisionConfig&) = default;
};

std::string_view to_string(PrecisionMode mode);
std::optional<PrecisionMode> parse_precision_mode(std::string_view text);

}  // namespace obeta
