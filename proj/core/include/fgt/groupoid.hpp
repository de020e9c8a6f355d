#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fgt/group.hpp"
#include "fgt/numeric.hpp"

namespace fgt {

/// Finite groupoid given extensionally: objects 0..num_objects-1, morphisms
/// with recorded endpoints, a dense composition table in diagrammatic order
/// (then(a, b) is "a followed by b", defined iff tgt(a) == src(b)), identity
/// and inverse assignments. audit() checks every axiom and throws
/// ValidationError naming the first failure.
class FiniteGroupoid {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Morphism {
    std::size_t src = 0;
    std::size_t tgt = 0;
    bool operator==(const Morphism&) const = default;
  };

  FiniteGroupoid(std::size_t num_objects, std::vector<Morphism> morphisms,
                 std::vector<std::size_t> identities, std::vector<std::size_t> inverses,
                 std::vector<std::size_t> then_table, std::string name = "groupoid");

  std::size_t num_objects() const { return num_objects_; }
  std::size_t num_morphisms() const { return morphisms_.size(); }
  std::size_t src(std::size_t m) const { return morphisms_[m].src; }
  std::size_t tgt(std::size_t m) const { return morphisms_[m].tgt; }
  std::size_t identity(std::size_t obj) const { return identities_[obj]; }
  std::size_t inverse(std::size_t m) const { return inverses_[m]; }
  /// Composite "a followed by b"; npos when tgt(a) != src(b).
  std::size_t then(std::size_t a, std::size_t b) const {
    return then_[a * morphisms_.size() + b];
  }
  bool is_identity(std::size_t m) const { return identities_[morphisms_[m].src] == m; }
  const std::string& name() const { return name_; }

  std::vector<std::size_t> hom(std::size_t x, std::size_t y) const;  // ascending morphism ids
  std::vector<std::size_t> automorphisms(std::size_t x) const { return hom(x, x); }

  /// Structural equality; the name is ignored.
  bool operator==(const FiniteGroupoid& rhs) const {
    return num_objects_ == rhs.num_objects_ && morphisms_ == rhs.morphisms_ &&
           identities_ == rhs.identities_ && inverses_ == rhs.inverses_ && then_ == rhs.then_;
  }

  void audit() const;

 private:
  std::size_t num_objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::size_t> identities_;
  std::vector<std::size_t> inverses_;
  std::vector<std::size_t> then_;  // dense num_morphisms^2, npos = undefined
  std::string name_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// Functor between finite groupoids, stored as object and morphism maps.
/// audit() checks endpoint compatibility, identity preservation and
/// composition preservation.
struct GroupoidFunctor {
  GroupoidPtr dom;
  GroupoidPtr cod;
  std::vector<std::size_t> object_map;
  std::vector<std::size_t> morphism_map;

  void audit() const;
  bool operator==(const GroupoidFunctor& rhs) const {
    return dom == rhs.dom && cod == rhs.cod && object_map == rhs.object_map &&
           morphism_map == rhs.morphism_map;
  }
};

/// Diagrammatic composite: f followed by g, so f.cod must be g.dom.
GroupoidFunctor compose_functors(const GroupoidFunctor& f, const GroupoidFunctor& g);

// -- Constructions ----------------------------------------------------------

/// One object, morphisms = group elements, then(a, b) = b * a.
GroupoidPtr delooping(const GroupPtr& group);

/// Action groupoid for a left action: objects are points, morphism (p, g)
/// (index p * |G| + g) runs p -> act(g, p); then((p, g), (_, h)) = (p, h*g).
GroupoidPtr action_groupoid(const GroupPtr& group, std::size_t num_points,
                            const std::function<std::size_t(std::size_t, std::size_t)>& act,
                            std::string name = "action-groupoid");

/// Total space of the universal bundle: action groupoid of left translation.
GroupoidPtr universal_bundle_total(const GroupPtr& group);

struct UniversalBundle {
  GroupoidPtr total;        // EG
  GroupoidPtr base;         // BG
  GroupoidFunctor projection;
};
UniversalBundle universal_bundle(const GroupPtr& group);

/// Loop groupoid: objects are group elements, morphism (x, g) runs
/// x -> g x g^-1, composition then((x, g), (_, h)) = (x, h*g).
GroupoidPtr loop_groupoid(const GroupPtr& group);

/// Inertia groupoid of X: objects are automorphisms a of objects of X,
/// morphisms (o, a) -> (o', a') are X-morphisms m: o -> o' with
/// then(a, m) == then(m, a').
GroupoidPtr inertia_groupoid(const FiniteGroupoid& x, std::string name = "");

GroupoidPtr discrete_groupoid(std::size_t n);
GroupoidPtr pair_groupoid(std::size_t n);
GroupoidPtr product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);

// -- Mapping groupoids -------------------------------------------------------

/// All functors shape -> target, lexicographically ordered by
/// (object_map, morphism_map). Throws SizeGuardError when the a priori
/// candidate count (sum over object maps of the product of hom-set sizes)
/// exceeds the cap.
std::vector<GroupoidFunctor> all_functors(const GroupoidPtr& shape, const GroupoidPtr& target,
                                          const Int& cap = 1000000);

struct MappingGroupoid {
  GroupoidPtr hom;                         // objects = functors, morphisms = natural transformations
  std::vector<GroupoidFunctor> functors;   // object o of hom is functors[o]
  // natural transformation m of hom has component components[m][o] at object o
  std::vector<std::vector<std::size_t>> components;
};
MappingGroupoid mapping_groupoid(const GroupoidPtr& shape, const GroupoidPtr& target,
                                 const Int& cap = 1000000);

/// Mapping groupoid out of the free-loop shape (one object, one generating
/// loop): objects are pairs (object of X, automorphism), morphisms are the
/// conjugating morphisms of X. Agrees with inertia_groupoid(X) on the nose.
GroupoidPtr free_loop_space(const FiniteGroupoid& x);

// -- Limits and invariants ---------------------------------------------------

struct PullbackGroupoid {
  GroupoidPtr total;
  GroupoidFunctor to_left;
  GroupoidFunctor to_right;
  // total object/morphism i is the pair (left index, right index)
  std::vector<std::pair<std::size_t, std::size_t>> object_pairs;
  std::vector<std::pair<std::size_t, std::size_t>> morphism_pairs;
};

/// Strict pullback of left: A -> C <- B :right. Both functors must share cod.
PullbackGroupoid pullback(const GroupoidFunctor& left, const GroupoidFunctor& right);

/// Mediating functor Z -> total for a cone (to_a, to_b) over the pullback
/// cospan; nullopt when the cone does not commute with the cospan legs.
std::optional<GroupoidFunctor> pullback_mediator(const PullbackGroupoid& pb,
                                                 const GroupoidFunctor& to_a,
                                                 const GroupoidFunctor& to_b);

std::vector<std::size_t> connected_components(const FiniteGroupoid& x);  // object -> component id

/// Sum over components of 1/|Aut| at a representative object.
Rational groupoid_cardinality(const FiniteGroupoid& x);

struct SkeletonResult {
  GroupoidPtr skeleton;
  std::vector<std::size_t> representative;  // component -> chosen object of x
};
SkeletonResult skeleton(const FiniteGroupoid& x);

struct GroupoidIso {
  std::vector<std::size_t> object_map;
  std::vector<std::size_t> morphism_map;
};
/// Backtracking search for an isomorphism x -> y; nullopt when none exists.
std::optional<GroupoidIso> find_isomorphism(const FiniteGroupoid& x, const FiniteGroupoid& y);

}  // namespace fgt
