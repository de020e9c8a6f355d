#pragma once

#include <array>
#include <map>
#include <vector>

#include "fgt/cyc_matrix.hpp"
#include "fgt/group.hpp"
#include "fgt/groupoid.hpp"
#include "fgt/phase.hpp"

namespace fgt {

/// Classifying data for a principal bundle: a functor from the cover model
/// of the base into the delooping of the structure group.
struct Cocycle {
  GroupPtr group;
  GroupoidFunctor map;  // base -> BG
};

/// Validates the functor and that its codomain is structurally BG.
Cocycle make_cocycle(GroupPtr group, GroupoidFunctor map);
/// Constant functor to the identity of BG.
Cocycle trivial_cocycle(const GroupPtr& group, const GroupoidPtr& base);
/// Base = BG itself, identity map.
Cocycle identity_cocycle(const GroupPtr& group);

/// Matrix representation of G: a functor from BG into the matrix model of
/// vector spaces, one square CycMatrix per element.
struct MatRep {
  GroupPtr group;
  std::size_t dim = 0;
  std::vector<CycMatrix> mats;  // indexed by element
};

/// Validates shapes, rho(e) = I and rho(ab) = rho(a) rho(b).
MatRep make_rep(GroupPtr group, std::vector<CycMatrix> mats);
MatRep trivial_rep(const GroupPtr& group, std::size_t dim = 1);
/// Permutation matrices of the left translation action.
MatRep regular_rep(const GroupPtr& group);
/// One-dimensional representation from a character; validates additivity.
MatRep phase_rep(const GroupPtr& group, const std::vector<Phase>& chi);

struct PrincipalBundle {
  GroupoidPtr total;
  GroupoidFunctor projection;    // total -> base
  GroupoidFunctor to_universal;  // total -> EG
  // total object i is the pair (base object, EG object)
  std::vector<std::pair<std::size_t, std::size_t>> object_pairs;
};

/// The bundle classified by the cocycle: strict pullback of the universal
/// bundle projection EG -> BG along the classifying map. Every fiber has
/// exactly |G| objects and no morphisms besides identities.
PrincipalBundle principal_bundle(const Cocycle& c);

struct AssociatedBundle {
  GroupoidPtr base;
  std::vector<std::size_t> dims;    // per object, all equal to the rep dimension
  std::vector<CycMatrix> matrices;  // per base morphism: rho(label of the cocycle)
};

/// Vector bundle with fiber the representation space and transport given by
/// rho applied to the cocycle labels.
AssociatedBundle associated_bundle(const Cocycle& c, const MatRep& rho);

struct SectionSpace {
  std::size_t dimension = 0;
  // basis vectors over the cyclotomic field, concatenated per-object blocks
  std::vector<std::vector<Cyclotomic>> basis;
};

/// Flat sections: one fiber vector per object with rho(g(m)) v_src = v_tgt
/// for every morphism m of the base. Over BG this is the invariant subspace.
SectionSpace sections(const Cocycle& c, const MatRep& rho);

/// Generalized permutation matrix: column j carries the single entry
/// e(phases[j]) in row perm[j]. Always invertible.
class MonomialMatrix {
 public:
  MonomialMatrix(std::vector<std::size_t> perm, std::vector<Phase> phases);
  static MonomialMatrix identity(std::size_t n);

  std::size_t size() const { return perm_.size(); }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<Phase>& phases() const { return phases_; }

  MonomialMatrix operator*(const MonomialMatrix& rhs) const;  // matrix product
  MonomialMatrix scaled(const Phase& p) const;
  MonomialMatrix inverse() const;
  bool operator==(const MonomialMatrix& rhs) const = default;

 private:
  std::vector<std::size_t> perm_;
  std::vector<Phase> phases_;
};

/// Abstract nerve of a cover: open-set indices with the ordered pair and
/// triple overlaps that are present.
struct CechCover {
  std::size_t opens = 0;
  std::vector<std::array<std::size_t, 2>> pairs;
  std::vector<std::array<std::size_t, 3>> triples;
};

/// Phase-valued 2-cochain on the nerve, one value per listed triple.
struct CechGerbe {
  CechCover cover;
  std::vector<Phase> phases;  // aligned with cover.triples

  Phase at(std::size_t i, std::size_t j, std::size_t k) const;
};

/// Validates that triple faces are present in the nerve and that the
/// alternating sum vanishes on every quadruple whose four faces are listed.
CechGerbe make_gerbe(CechCover cover, std::vector<Phase> phases);

/// Transition data of a twisted vector bundle on the same cover: one
/// monomial matrix per ordered pair overlap.
struct TwistedBundle {
  std::size_t opens = 0;
  std::map<std::array<std::size_t, 2>, MonomialMatrix> transitions;
};

/// True iff t_ij t_jk == t_ik scaled by the gerbe phase on every listed
/// triple. Throws ValidationError on missing transitions or rank mismatch.
bool check_twisted_bundle(const CechGerbe& gerbe, const TwistedBundle& tw);

}  // namespace fgt
