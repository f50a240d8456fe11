#ifndef MGP_NUMERIC_TEXT_HPP
#define MGP_NUMERIC_TEXT_HPP

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace mgp {

/// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

/// Locale-independent full-token parse; nullopt unless the whole field is
/// a plain decimal number ('.' separator, optional exponent).
inline std::optional<double> parse_double(std::string_view field) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
    return value;
}

inline std::optional<int> parse_int(std::string_view field) {
    int value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
    return value;
}

}  // namespace mgp

#endif
