#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "semsense/errors.hpp"

namespace semsense {

// Canonical decimal text for a double: the shortest string that parses back to
// the same value, in plain positional notation for magnitudes in [1e-4, 1e15)
// (and for zero), scientific otherwise. Byte counts depend on this, so it must
// not vary by locale or platform.
inline std::string format_double(double value) {
  if (!std::isfinite(value)) {
    throw ValidationError("cannot format non-finite value");
  }
  std::array<char, 64> buf{};
  const double mag = std::fabs(value);
  const auto fmt = (mag == 0.0 || (mag >= 1e-4 && mag < 1e15)) ? std::chars_format::fixed
                                                               : std::chars_format::scientific;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt);
  if (ec != std::errc{}) {
    throw ValidationError("double formatting failed");
  }
  return std::string(buf.data(), end);
}

// Strict parse of the whole string; no leading '+', no surrounding whitespace.
inline std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace semsense
