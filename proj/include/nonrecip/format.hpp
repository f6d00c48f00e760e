// format.hpp: fixed numeric formatting for emitted files

#pragma once

#include <string>

namespace nonrecip {

/// Nine significant digits in scientific notation ("-3.00000000e+02"),
/// locale independent; negative zero prints as zero.
std::string format_number(double value);

}  // namespace nonrecip
