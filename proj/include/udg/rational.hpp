#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace udg {

// Exact arbitrary-precision rational. cpp_rational keeps the canonical form
// we rely on everywhere: denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

// Accepts "-3", "3/4", "-3/4" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

}  // namespace udg
