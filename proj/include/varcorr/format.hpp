#pragma once

#include <charconv>
#include <string>

namespace varcorr::detail {

// Locale-independent double formatting. Output bytes must not depend on the
// process locale, or golden-file comparisons would.
inline std::string fmt_general(double x, int precision) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, precision);
    return std::string(buf, p);
}

inline std::string fmt_fixed(double x, int precision) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::fixed, precision);
    return std::string(buf, p);
}

} // namespace varcorr::detail
