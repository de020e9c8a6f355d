#include "fgt/numeric.hpp"

#include "fgt/errors.hpp"

namespace fgt {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Int(text));
    }
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw ValidationError("rational with zero denominator: " + text);
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw ValidationError("malformed rational '" + text + "': " + e.what());
  }
}

std::string format_rational(const Rational& value) {
  Int num = boost::multiprecision::numerator(value);
  Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Int floor_div(const Int& num, const Int& den) {
  Int q = num / den;
  if ((num % den) != 0 && ((num < 0) != (den < 0))) q -= 1;
  return q;
}

Int mod_floor(const Int& value, const Int& m) { return value - floor_div(value, m) * m; }

}  // namespace fgt
