#ifndef CREDAL_RATIONAL_HPP
#define CREDAL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace credal {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "a/b", integers, and finite decimals ("0.25", ".5", "-3.125"),
// all parsed exactly.
Rational parse_rational(std::string_view text);

// "a/b", or just "a" when the denominator is 1.
std::string format_rational(const Rational& r);

double rational_to_double(const Rational& r);

// Exact binary expansion of the double.
Rational rational_from_double(double x);

// Best continued-fraction approximant of x with denominator <= max_den.
// Returns nullopt for non-finite input.
std::optional<Rational> snap_to_rational(double x, std::int64_t max_den);

}  // namespace credal

#endif
