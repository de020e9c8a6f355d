#include "fgt/phase.hpp"

#include "fgt/errors.hpp"

namespace fgt {

Phase::Phase(const Int& num, const Int& den) {
  if (den == 0) throw ValidationError("phase with zero denominator");
  Int d = abs(den);
  Int n = mod_floor(den < 0 ? Int(-num) : num, d);
  Int g = gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Phase Phase::from_rational(const Rational& value) {
  return Phase(boost::multiprecision::numerator(value),
               boost::multiprecision::denominator(value));
}

Phase Phase::parse(const std::string& text) { return from_rational(parse_rational(text)); }

Phase Phase::operator+(const Phase& rhs) const {
  return Phase(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

Phase Phase::operator-(const Phase& rhs) const { return *this + (-rhs); }

Phase Phase::operator-() const { return Phase(-num_, den_); }

Phase& Phase::operator+=(const Phase& rhs) { return *this = *this + rhs; }

Phase Phase::scaled(const Int& factor) const { return Phase(num_ * factor, den_); }

std::strong_ordering Phase::operator<=>(const Phase& rhs) const {
  Int lhs_cross = num_ * rhs.den_;
  Int rhs_cross = rhs.num_ * den_;
  if (lhs_cross < rhs_cross) return std::strong_ordering::less;
  if (lhs_cross > rhs_cross) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Phase::to_string() const { return num_.str() + "/" + den_.str(); }

}  // namespace fgt
