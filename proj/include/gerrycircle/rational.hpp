#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gerrycircle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms; integers print as "p/1" so the format is uniform.
std::string to_fraction_string(const Rational& value);

/// Correctly rounded to double even when numerator and denominator are huge.
double to_double(const Rational& value);

/// Decimal rendering with `digits` significant digits.
std::string to_decimal_string(const Rational& value, int digits = 12);

/// Binomial coefficient by the multiplicative recurrence.
BigInt binomial(unsigned n, unsigned k);

}  // namespace gerrycircle
