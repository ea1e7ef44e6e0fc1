// Exact integer and rational arithmetic used throughout fanodeg.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace fanodeg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// Returns g = gcd(a, b) >= 0 and sets s, t with s*a + t*b = g.
Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t);

// Floor division and nonnegative remainder for b > 0.
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

Int numer(const Rat& r);
Int denom(const Rat& r);

int sign(const Int& a);
int sign(const Rat& a);

// Narrowing with an overflow check; throws std::overflow_error.
std::int64_t to_i64(const Int& a);

// "p/q" or "p"; canonical output omits a unit denominator.
std::string to_string(const Int& a);
std::string to_string(const Rat& r);

// Parses a rational literal; throws std::invalid_argument on bad syntax
// or zero denominator.
Rat parse_rat(std::string_view text);

}  // namespace fanodeg
