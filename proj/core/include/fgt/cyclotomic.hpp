#pragma once

#include "fgt/numeric.hpp"
#include "fgt/phase.hpp"

#include <string>
#include <vector>

namespace fgt {

/// Element of the cyclotomic field Q(zeta_N), stored as its unique
/// representative of degree < phi(N) in the power basis 1, z, ..., z^{phi(N)-1}
/// after reduction mod the N-th cyclotomic polynomial. Binary operations on
/// elements of different orders promote both to the lcm order first; equality
/// of reduced coefficient vectors at a common order is equality of values.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}
  explicit Cyclotomic(const Rational& value) : order_(1), coeffs_(1, value) {}
  Cyclotomic(unsigned order, std::vector<Rational> coeffs);

  static Cyclotomic zero() { return Cyclotomic(); }
  static Cyclotomic one() { return Cyclotomic(Rational(1)); }

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const { return *this == one(); }
  /// True when the value lies in Q, i.e. only the constant coefficient survives.
  bool is_rational() const;
  Rational rational_value() const;  // pre: is_rational()

  /// Same value viewed in Q(zeta_m); requires order() | m.
  Cyclotomic to_order(unsigned m) const;

  Cyclotomic operator+(const Cyclotomic& rhs) const;
  Cyclotomic operator-(const Cyclotomic& rhs) const;
  Cyclotomic operator*(const Cyclotomic& rhs) const;
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);
  Cyclotomic scaled(const Rational& factor) const;
  /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
  /// against the (irreducible) cyclotomic polynomial. pre: nonzero.
  Cyclotomic inverse() const;
  Cyclotomic pow(const Int& exponent) const;

  bool operator==(const Cyclotomic& rhs) const;
  bool operator!=(const Cyclotomic& rhs) const { return !(*this == rhs); }

  std::string to_string() const;

  /// Monic N-th cyclotomic polynomial over Z, low-degree-first coefficients,
  /// computed by dividing x^N - 1 by all lower Phi_d (d | N) and cached.
  static const std::vector<Int>& cyclotomic_polynomial(unsigned n);
  static unsigned phi_degree(unsigned n);

 private:
  unsigned order_;
  std::vector<Rational> coeffs_;  // size phi(order_), reduced mod Phi
};

/// zeta_order ^ (a * order / a.den); requires a.den | order.
Cyclotomic embed(const Phase& a, unsigned order);
/// Embeds at the minimal order, i.e. a's denominator.
Cyclotomic embed(const Phase& a);

unsigned lcm_u(unsigned a, unsigned b);

}  // namespace fgt
