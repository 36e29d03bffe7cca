#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace capwhitham {

/// Shortest round-trip decimal representation; locale independent.
inline std::string fmt_num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace capwhitham
