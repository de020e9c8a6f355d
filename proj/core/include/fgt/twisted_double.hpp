#pragma once

#include <optional>
#include <vector>

#include "fgt/cohomology.hpp"
#include "fgt/cyc_matrix.hpp"
#include "fgt/group.hpp"

namespace fgt {

/// Transgression of a 3-cocycle to the loop groupoid:
/// (ta)(x; g, h) = a(x,g,h) + a(g,h,(hg)x(hg)^-1) - a(g, gxg^-1, h).
/// The output satisfies the loop 2-cocycle condition for every 3-cocycle
/// input. Requires is_three_cocycle(alpha).
LoopTwoCochain transgress(const GroupCochain& alpha);

/// 1-cochain on loop morphisms (x, g), dense on all |G|^2 pairs.
class LoopOneCochain {
 public:
  explicit LoopOneCochain(GroupPtr group);

  const GroupPtr& group() const { return group_; }
  Phase at(std::size_t x, std::size_t g) const { return values_[x * n_ + g]; }
  void set(std::size_t x, std::size_t g, const Phase& v) { values_[x * n_ + g] = v; }
  bool is_zero() const;

 private:
  GroupPtr group_;
  std::size_t n_;
  std::vector<Phase> values_;
};

/// (d lam)(x; g, h) = lam(x, g) + lam(gxg^-1, h) - lam(x, hg).
LoopTwoCochain loop_coboundary(const LoopOneCochain& lam);

/// Witness lam with d(lam) = w, both valued in (1/M)Z/Z, or nullopt.
std::optional<LoopOneCochain> loop_coboundary_witness(const LoopTwoCochain& w, const Int& modulus);

/// Twisted groupoid algebra of the loop groupoid: basis e_(x,g) indexed by
/// loop morphisms, with e_(x,g) * e_(y,h) = embed(w(x;g,h)) e_(x,hg) when
/// y = gxg^-1 and 0 otherwise. Dimension |G|^2. Requires a normalized twist.
class TwistedLoopAlgebra {
 public:
  TwistedLoopAlgebra(GroupPtr group, LoopTwoCochain twist);

  const GroupPtr& group() const { return group_; }
  const LoopTwoCochain& twist() const { return twist_; }
  std::size_t dimension() const { return n_ * n_; }
  /// Common cyclotomic order for all structure constants.
  unsigned coefficient_order() const { return order_; }

  std::size_t basis_index(std::size_t x, std::size_t g) const { return x * n_ + g; }
  std::pair<std::size_t, std::size_t> basis_label(std::size_t i) const { return {i / n_, i % n_}; }

  struct Term {
    bool zero = true;
    Phase phase;        // coefficient as a root of unity
    std::size_t index = 0;
  };
  Term basis_product(std::size_t i, std::size_t j) const;

  std::vector<Cyclotomic> multiply(const std::vector<Cyclotomic>& a,
                                   const std::vector<Cyclotomic>& b) const;
  std::vector<Cyclotomic> unit() const;  // sum over x of e_(x, e)

 private:
  GroupPtr group_;
  LoopTwoCochain twist_;
  std::size_t n_;
  unsigned order_;
};

/// (e_i e_j) e_k == e_i (e_j e_k) over all basis triples; equivalent to the
/// loop 2-cocycle condition on the twist.
bool check_associativity(const TwistedLoopAlgebra& a);

/// Dimension of {z : z e_i = e_i z for all i}. The basis products are
/// monomial, so the constraints are two-term relations between coordinates
/// with root-of-unity ratios; they are propagated exactly. Requires an
/// associative algebra.
std::size_t center_dimension(const TwistedLoopAlgebra& a);

/// Equivariant vector bundle data over the loop groupoid: a dimension per
/// object x and a matrix per morphism (x, g) of shape dims[gxg^-1] x dims[x].
struct LoopRep {
  GroupPtr group;
  std::vector<std::size_t> dims;
  std::vector<CycMatrix> matrices;  // indexed x * |G| + g

  const CycMatrix& at(std::size_t x, std::size_t g) const {
    return matrices[x * group->order() + g];
  }
};

/// Identity at (x, e) plus the twisted composition law:
/// sigma(gxg^-1, h) sigma(x, g) == embed(w(x;g,h)) sigma(x, hg).
/// Throws on shape mismatch.
bool is_twisted_rep(const LoopRep& sigma, const LoopTwoCochain& w);

/// Trivial one-dimensional bundle supported at the identity object.
LoopRep unit_rep(const GroupPtr& group);

/// One-dimensional bundle supported at x with the given character values
/// chi[g]. Requires x central: a single-object support cannot satisfy the
/// composition law once some g moves x.
LoopRep character_rep(const GroupPtr& group, std::size_t x, const std::vector<Phase>& chi);

/// Fusion of untwisted bundles: (s * s')(x) = sum over y of
/// s(xy^-1) (x) s'(y), with the block (y -> gyg^-1) acted on by
/// s(xy^-1, g) tensor s'(y, g). Inputs must satisfy the untwisted rep law.
LoopRep fuse(const LoopRep& a, const LoopRep& b);

/// chi(x, g) = trace sigma(x, g) when gxg^-1 = x, else 0; indexed x*|G|+g.
std::vector<Cyclotomic> rep_character(const LoopRep& sigma);

}  // namespace fgt
