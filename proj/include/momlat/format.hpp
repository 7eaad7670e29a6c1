#pragma once

#include <string>

namespace momlat {

// Fixed 15-significant-digit, locale-independent rendering for all emitted data.
std::string format_real(double value);

// value rounded to 15 significant digits, so JSON serialisation stays byte-stable.
double round_to_output_precision(double value);

}  // namespace momlat
