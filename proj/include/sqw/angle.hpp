#pragma once

#include "sqw/error.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

namespace sqw {

namespace detail {

inline double parse_plain_number(std::string_view s, std::string_view whole) {
    double v = 0.0;
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty() || !std::isfinite(v)) {
        throw DomainError("cannot parse angle '" + std::string(whole) + "'");
    }
    return v;
}

} // namespace detail

/**
 * @brief Angle in radians from a decimal or a symbolic multiple of pi.
 *
 * Accepted forms: `0.7`, `pi`, `-pi`, `pi/3`, `2pi/3`, `2*pi/3`, `-3*pi/4`,
 * `0.5pi`. Symbolic forms are evaluated as coefficient * pi / denominator.
 */
inline double parse_angle(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (ch != ' ') {
            s.push_back(ch);
        }
    }
    const auto pos = s.find("pi");
    if (pos == std::string::npos) {
        return detail::parse_plain_number(s, text);
    }

    std::string_view head(s.data(), pos);
    std::string_view tail(s.data() + pos + 2, s.size() - pos - 2);
    if (!head.empty() && head.back() == '*') {
        head.remove_suffix(1);
    }
    double coeff = 1.0;
    if (head == "-") {
        coeff = -1.0;
    } else if (head == "+") {
        coeff = 1.0;
    } else if (!head.empty()) {
        coeff = detail::parse_plain_number(head, text);
    }
    double denom = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') {
            throw DomainError("cannot parse angle '" + std::string(text) + "'");
        }
        tail.remove_prefix(1);
        denom = detail::parse_plain_number(tail, text);
        if (denom == 0.0) {
            throw DomainError("angle '" + std::string(text) + "' divides by zero");
        }
    }
    return coeff * std::numbers::pi / denom;
}

} // namespace sqw
