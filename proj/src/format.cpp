#include "nonrecip/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace nonrecip {

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // folds -0
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific, 8);
    return std::string(buf.data(), res.ptr);
}

}  // namespace nonrecip
