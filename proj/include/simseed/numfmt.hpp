#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace simseed {

// Shortest decimal representation that parses back to the same double.
// Keeps golden files and grid round trips byte-stable.
std::string format_double(double v);

std::string format_int(long long v);

// Strict parsers: the whole token must be consumed.
double parse_double(std::string_view token);
long long parse_int(std::string_view token);
bool try_parse_double(std::string_view token, double& out);

// Banker's rounding, independent of the ambient FP rounding mode.
long long round_half_even(double v);

// Rounds half away from zero. Used to quantize cell centers that sit
// exactly on half-multiples of the grid step.
long long round_half_away(double v);

} // namespace simseed
