#include "gerrycircle/rational.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace gerrycircle {

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) {
  const BigInt& num = numerator(value);
  const BigInt& den = denominator(value);
  if (num == 0) return 0.0;
  const BigInt mag = num < 0 ? BigInt(-num) : num;
  const long shift = static_cast<long>(msb(mag)) - static_cast<long>(msb(den));
  // Scale so the quotient carries 62 significant bits, then let the
  // integer-to-double conversion round.
  constexpr long kBits = 62;
  BigInt quotient;
  if (kBits - shift >= 0) {
    quotient = (mag << static_cast<unsigned>(kBits - shift)) / den;
  } else {
    quotient = mag / (den << static_cast<unsigned>(shift - kBits));
  }
  const double scaled = static_cast<double>(quotient.convert_to<std::uint64_t>());
  const double result = std::ldexp(scaled, static_cast<int>(shift - kBits));
  return num < 0 ? -result : result;
}

std::string to_decimal_string(const Rational& value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, to_double(value));
  return buffer;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace gerrycircle
