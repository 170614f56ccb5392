#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kinlap {

/// Arbitrary precision rational, always kept in lowest terms.
using Rational = boost::multiprecision::cpp_rational;

/// "num/den" with an explicit denominator, e.g. "3/1".
std::string format_rational(const Rational& r);

/// Accepts "n", "n/d" and optional surrounding whitespace; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

Rational rational_pow(const Rational& base, int exponent);

}  // namespace kinlap
