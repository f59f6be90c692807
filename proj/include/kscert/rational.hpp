#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace kscert {

using BigInt = boost::multiprecision::cpp_int;

// Always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

inline BigInt numerator_of(const Rational& value) {
  return boost::multiprecision::numerator(value);
}

inline BigInt denominator_of(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

/// Exact binomial coefficient; zero when k > n.
BigInt binomial(unsigned n, unsigned k);

}  // namespace kscert
