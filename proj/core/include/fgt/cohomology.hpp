#pragma once

#include <optional>
#include <vector>

#include "fgt/group.hpp"
#include "fgt/int_matrix.hpp"
#include "fgt/numeric.hpp"
#include "fgt/phase.hpp"

namespace fgt {

/// Total cochain on G^degree with values in Q/Z, dense storage with the last
/// argument fastest-varying. Degree 0 is a single value on the empty tuple.
class GroupCochain {
 public:
  GroupCochain(GroupPtr group, unsigned degree);

  const GroupPtr& group() const { return group_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return values_.size(); }

  Phase at(const std::vector<std::size_t>& args) const { return values_[index_of(args)]; }
  void set(const std::vector<std::size_t>& args, const Phase& v) { values_[index_of(args)] = v; }
  const Phase& at_index(std::size_t i) const { return values_[i]; }
  void set_index(std::size_t i, const Phase& v) { values_[i] = v; }

  std::size_t index_of(const std::vector<std::size_t>& args) const;
  std::vector<std::size_t> args_of(std::size_t index) const;

  /// True when the value is 0 whenever any argument is the identity.
  bool normalized() const;
  bool is_zero() const;

  GroupCochain operator+(const GroupCochain& rhs) const;
  GroupCochain operator-(const GroupCochain& rhs) const;
  bool operator==(const GroupCochain& rhs) const;

 private:
  GroupPtr group_;
  unsigned degree_;
  std::vector<Phase> values_;
};

/// Bar differential: (dc)(g1,...,g_{n+1}) = c(g2,...) + sum_i (-1)^i
/// c(..., g_{i+1} g_i, ...) + (-1)^{n+1} c(g1,...,gn), where the composite of
/// g then h is written hg.
GroupCochain differential(const GroupCochain& c);

/// The degree-3 cocycle identity, checked directly on all quadruples:
/// a(g,h,k) + a(g,kh,l) + a(h,k,l) == a(hg,k,l) + a(g,h,lk).
bool is_three_cocycle(const GroupCochain& alpha);

/// a_p(a,b,c) = p * a * floor((b+c)/n) / n on Z/n; requires 0 <= p < n.
GroupCochain cyclic_three_cocycle(const GroupPtr& cyclic_group, const Int& p);
GroupCochain cyclic_three_cocycle(std::size_t n, const Int& p);

/// Witness beta with d(beta) = alpha, both valued in (1/M)Z/Z, or nullopt.
std::optional<GroupCochain> is_coboundary(const GroupCochain& alpha, const Int& modulus);

/// Invariant factors of H_n(G, Z) from the normalized bar complex; the order
/// of H^n(G, Q/Z) is their product. Guard: (|G|-1)^(n+1) <= 1e5, 1 <= n <= 4.
std::vector<Int> group_homology(const FiniteGroup& g, unsigned n);

struct CocycleClasses {
  Int cocycle_count = 0;  // cocycles valued in (1/M)Z/Z
  Int class_count = 0;    // after quotienting by coboundaries (any denominator)
  std::vector<GroupCochain> representatives;  // one normalized cochain per class
  bool matches_homology = false;              // class_count == |H^n(G, Q/Z)|
};

/// Solves the cocycle equation over (1/M)Z/Z on the normalized complex and
/// reduces modulo coboundaries. The flag records whether the class count
/// agrees with the homology-derived order (it can undershoot when M misses
/// torsion). Same guards as group_homology.
CocycleClasses solve_cocycles(const GroupPtr& g, unsigned n, const Int& modulus);

/// Differential matrix in degree n: rows are (n+1)-tuples, columns n-tuples,
/// last argument fastest-varying. Normalized restricts to identity-free
/// tuples and drops terms whose merged entry is the identity.
IntMatrix cochain_differential_matrix(const FiniteGroup& g, unsigned n, bool normalized);

/// Cochain on composable pairs of loop morphisms: triples (x; g, h) standing
/// for x --g--> gxg^-1 --h--> hgx(hg)^-1, dense on all |G|^3 triples.
class LoopTwoCochain {
 public:
  explicit LoopTwoCochain(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  Phase at(std::size_t x, std::size_t g, std::size_t h) const {
    return values_[(x * n_ + g) * n_ + h];
  }
  void set(std::size_t x, std::size_t g, std::size_t h, const Phase& v) {
    values_[(x * n_ + g) * n_ + h] = v;
  }
  /// True when the value is 0 whenever g or h is the identity.
  bool normalized() const;
  bool is_zero() const;

  LoopTwoCochain operator+(const LoopTwoCochain& rhs) const;
  LoopTwoCochain operator-(const LoopTwoCochain& rhs) const;
  bool operator==(const LoopTwoCochain& rhs) const;

 private:
  GroupPtr group_;
  std::size_t n_;
  std::vector<Phase> values_;
};

/// Groupoid 2-cocycle condition along x -g-> gxg^-1 -h-> . -k-> .:
/// w(x; g, h) + w(x; hg, k) == w(gxg^-1; h, k) + w(x; g, kh) for all tuples.
bool is_loop_two_cocycle(const LoopTwoCochain& w);

}  // namespace fgt
