#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fgt {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

/// Parses "p/q" or "p"; the denominator must be nonzero.
Rational parse_rational(const std::string& text);

/// Canonical form: "0", "7", "-1/2".
std::string format_rational(const Rational& value);

/// Floor of num/den for den > 0.
Int floor_div(const Int& num, const Int& den);

/// Representative of value mod m in [0, m).
Int mod_floor(const Int& value, const Int& m);

}  // namespace fgt
