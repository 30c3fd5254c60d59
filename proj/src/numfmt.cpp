#include "simseed/numfmt.hpp"

#include "simseed/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace simseed {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_int(long long v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool try_parse_double(std::string_view token, double& out) {
    if (token.empty()) {
        return false;
    }
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

double parse_double(std::string_view token) {
    double v = 0;
    if (!try_parse_double(token, v)) {
        throw ParseError("not a number: '" + std::string(token) + "'");
    }
    return v;
}

long long parse_int(std::string_view token) {
    long long v = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw ParseError("not an integer: '" + std::string(token) + "'");
    }
    return v;
}

long long round_half_even(double v) {
    const double fl = std::floor(v);
    const double frac = v - fl;
    long long n = static_cast<long long>(fl);
    if (frac > 0.5) {
        return n + 1;
    }
    if (frac < 0.5) {
        return n;
    }
    return (n % 2 == 0) ? n : n + 1;
}

long long round_half_away(double v) {
    return static_cast<long long>(v < 0 ? std::ceil(v - 0.5) : std::floor(v + 0.5));
}

} // namespace simseed
