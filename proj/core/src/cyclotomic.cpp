#include "fgt/cyclotomic.hpp"

#include "fgt/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace fgt {
namespace {

using Poly = std::vector<Rational>;  // low-degree-first, no trailing-zero guarantee

int degree_of(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

void trim(Poly& p) { p.resize(static_cast<size_t>(degree_of(p) + 1)); }

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// Remainder of a mod b; b monic after scaling by its leading coefficient.
Poly rem(Poly a, const Poly& b) {
  int db = degree_of(b);
  if (db < 0) throw PreconditionError("polynomial division by zero");
  Rational lead = b[static_cast<size_t>(db)];
  int da = degree_of(a);
  while (da >= db) {
    Rational factor = a[static_cast<size_t>(da)] / lead;
    for (int i = 0; i <= db; ++i)
      a[static_cast<size_t>(da - db + i)] -= factor * b[static_cast<size_t>(i)];
    da = degree_of(a);
  }
  trim(a);
  return a;
}

Poly quot(Poly a, const Poly& b) {
  int db = degree_of(b);
  if (db < 0) throw PreconditionError("polynomial division by zero");
  Rational lead = b[static_cast<size_t>(db)];
  int da = degree_of(a);
  if (da < db) return {};
  Poly q(static_cast<size_t>(da - db + 1), Rational(0));
  while (da >= db) {
    Rational factor = a[static_cast<size_t>(da)] / lead;
    q[static_cast<size_t>(da - db)] = factor;
    for (int i = 0; i <= db; ++i)
      a[static_cast<size_t>(da - db + i)] -= factor * b[static_cast<size_t>(i)];
    da = degree_of(a);
  }
  return q;
}

Poly int_to_poly(const std::vector<Int>& p) {
  Poly out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = Rational(p[i]);
  return out;
}

std::map<unsigned, std::vector<Int>>& phi_cache() {
  static std::map<unsigned, std::vector<Int>> cache;
  return cache;
}
std::mutex& phi_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Int> compute_phi(unsigned n) {
  // x^n - 1 divided by the product of Phi_d over proper divisors d.
  Poly p(n + 1, Rational(0));
  p[0] = Rational(-1);
  p[n] = Rational(1);
  Poly div{Rational(1)};
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    div = mul(div, int_to_poly(Cyclotomic::cyclotomic_polynomial(d)));
  }
  Poly q = quot(std::move(p), div);
  std::vector<Int> out(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (boost::multiprecision::denominator(q[i]) != 1)
      throw PreconditionError("cyclotomic polynomial with non-integer coefficient");
    out[i] = boost::multiprecision::numerator(q[i]);
  }
  return out;
}

}  // namespace

const std::vector<Int>& Cyclotomic::cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw PreconditionError("cyclotomic polynomial of order 0");
  {
    std::lock_guard<std::mutex> lock(phi_mutex());
    auto it = phi_cache().find(n);
    if (it != phi_cache().end()) return it->second;
  }
  std::vector<Int> value = compute_phi(n);
  std::lock_guard<std::mutex> lock(phi_mutex());
  return phi_cache().emplace(n, std::move(value)).first->second;
}

unsigned Cyclotomic::phi_degree(unsigned n) {
  return static_cast<unsigned>(cyclotomic_polynomial(n).size() - 1);
}

Cyclotomic::Cyclotomic(unsigned order, std::vector<Rational> coeffs) : order_(order) {
  if (order == 0) throw ValidationError("cyclotomic of order 0");
  Poly p = std::move(coeffs);
  Poly reduced = rem(std::move(p), int_to_poly(cyclotomic_polynomial(order)));
  reduced.resize(phi_degree(order), Rational(0));
  coeffs_ = std::move(reduced);
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw PreconditionError("cyclotomic value is not rational");
  return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Cyclotomic Cyclotomic::to_order(unsigned m) const {
  if (m % order_ != 0) throw PreconditionError("cyclotomic order promotion must go to a multiple");
  if (m == order_) return *this;
  unsigned step = m / order_;
  // Substitute z_N = z_m^step; coeffs_ always has size phi(N) >= 1.
  std::vector<Rational> lifted(static_cast<size_t>(coeffs_.size() - 1) * step + 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) lifted[i * step] = coeffs_[i];
  return Cyclotomic(m, std::move(lifted));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& rhs) const {
  unsigned m = lcm_u(order_, rhs.order_);
  Cyclotomic a = to_order(m), b = rhs.to_order(m);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& rhs) const { return *this + (-rhs); }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& rhs) const {
  unsigned m = lcm_u(order_, rhs.order_);
  Cyclotomic a = to_order(m), b = rhs.to_order(m);
  return Cyclotomic(m, mul(a.coeffs_, b.coeffs_));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) { return *this = *this + rhs; }
Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) { return *this = *this * rhs; }

Cyclotomic Cyclotomic::scaled(const Rational& factor) const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c *= factor;
  return out;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero cyclotomic");
  if (is_rational()) return Cyclotomic(Rational(1) / coeffs_[0]);
  // Extended Euclid: u*a + v*Phi = g with g a nonzero constant.
  Poly a = coeffs_;
  trim(a);
  Poly b = int_to_poly(cyclotomic_polynomial(order_));
  Poly u0{Rational(1)}, u1{};
  Poly r0 = a, r1 = b;
  while (degree_of(r1) >= 0) {
    Poly q = quot(r0, r1);
    Poly r2 = r0;
    {
      Poly qr = mul(q, r1);
      r2.resize(std::max(r2.size(), qr.size()), Rational(0));
      for (size_t i = 0; i < qr.size(); ++i) r2[i] -= qr[i];
      trim(r2);
    }
    Poly u2 = u0;
    {
      Poly qu = mul(q, u1);
      u2.resize(std::max(u2.size(), qu.size()), Rational(0));
      for (size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
      trim(u2);
    }
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (degree_of(r0) != 0)
    throw PreconditionError("cyclotomic inverse: gcd with Phi_N is not constant");
  Rational g = r0[0];
  for (auto& c : u0) c /= g;
  return Cyclotomic(order_, std::move(u0));
}

Cyclotomic Cyclotomic::pow(const Int& exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Cyclotomic base = *this;
  Cyclotomic acc = one();
  Int e = exponent;
  while (e > 0) {
    if ((e & 1) != 0) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

bool Cyclotomic::operator==(const Cyclotomic& rhs) const {
  unsigned m = lcm_u(order_, rhs.order_);
  return to_order(m).coeffs_ == rhs.to_order(m).coeffs_;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  out << "cyc(" << order_ << ";";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out << ",";
    out << format_rational(coeffs_[i]);
  }
  out << ")";
  return out.str();
}

Cyclotomic embed(const Phase& a, unsigned order) {
  Int den = a.den();
  if (Int(order) % den != 0)
    throw PreconditionError("phase denominator does not divide the cyclotomic order");
  Int exponent = a.num() * (Int(order) / den);
  unsigned k = static_cast<unsigned>(mod_floor(exponent, Int(order)));
  std::vector<Rational> coeffs(static_cast<size_t>(k) + 1, Rational(0));
  coeffs[k] = Rational(1);
  return Cyclotomic(order, std::move(coeffs));
}

Cyclotomic embed(const Phase& a) {
  return embed(a, static_cast<unsigned>(a.den()));
}

unsigned lcm_u(unsigned a, unsigned b) { return std::lcm(a, b); }

}  // namespace fgt
