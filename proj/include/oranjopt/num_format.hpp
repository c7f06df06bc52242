// SPDX-License-Identifier: Apache-2.0
//
// Shortest round-trip decimal formatting for doubles.  File formats store
// rationals as decimal strings so that save/load is an exact identity.

#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oranjopt::numfmt {

inline std::string to_decimal(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "0";
    return std::string(buf, ptr);
}

inline double from_decimal(std::string_view sv) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || ptr != sv.data() + sv.size())
        throw std::invalid_argument("bad decimal string: '" + std::string(sv) + "'");
    return v;
}

}  // namespace oranjopt::numfmt
