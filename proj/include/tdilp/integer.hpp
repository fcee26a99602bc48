#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tdilp {

using Integer = boost::multiprecision::cpp_int;

// Division rounding toward negative / positive infinity. divisor != 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);

// Non-negative residue of a modulo q (q > 0).
int mod_small(const Integer& a, int q);

Integer abs_value(const Integer& a);
Integer gcd_value(const Integer& a, const Integer& b);

std::string to_string(const Integer& a);
std::optional<Integer> parse_integer(std::string_view text);

// Fits in int64_t?
std::optional<std::int64_t> to_int64(const Integer& a);

}  // namespace tdilp
