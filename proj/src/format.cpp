#include "momlat/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace momlat {

std::string format_real(double value) {
  if (value == 0.0) {
    return "0";  // drops the sign of -0.0
  }
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 15);
  if (ec != std::errc{}) {
    return std::to_string(value);
  }
  return std::string(buffer, end);
}

double round_to_output_precision(double value) {
  if (!std::isfinite(value) || value == 0.0) {
    return value == 0.0 ? 0.0 : value;
  }
  const std::string text = format_real(value);
  double parsed = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), parsed);
  return parsed;
}

}  // namespace momlat
