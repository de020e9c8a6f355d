#pragma once

#include "fgt/numeric.hpp"

#include <compare>
#include <string>

namespace fgt {

/// Element of Q/Z written additively. The stored representative is the
/// canonical p/q with 0 <= p < q and gcd(p, q) = 1; zero is 0/1.
class Phase {
 public:
  Phase() = default;
  Phase(const Int& num, const Int& den);
  static Phase from_rational(const Rational& value);
  static Phase parse(const std::string& text);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  /// Additive order in Q/Z, i.e. the canonical denominator.
  const Int& order() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Phase operator+(const Phase& rhs) const;
  Phase operator-(const Phase& rhs) const;
  Phase operator-() const;
  Phase& operator+=(const Phase& rhs);
  /// Integer scaling n * (p/q).
  Phase scaled(const Int& factor) const;

  bool operator==(const Phase& rhs) const = default;
  std::strong_ordering operator<=>(const Phase& rhs) const;

  /// Canonical "p/q" (zero prints as "0/1").
  std::string to_string() const;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace fgt
