#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fgt/cyclotomic.hpp"
#include "fgt/group.hpp"
#include "fgt/groupoid.hpp"

namespace fgt {

/// Finite category given extensionally, like FiniteGroupoid but without
/// inverses: composition then(a, b) = "a followed by b" must be defined
/// exactly on composable pairs.
class FiniteCategory {
 public:
  static constexpr std::size_t npos = FiniteGroupoid::npos;

  FiniteCategory(std::size_t num_objects, std::vector<FiniteGroupoid::Morphism> morphisms,
                 std::vector<std::size_t> identities, std::vector<std::size_t> then_table,
                 std::string name = "category");

  std::size_t num_objects() const { return num_objects_; }
  std::size_t num_morphisms() const { return morphisms_.size(); }
  std::size_t src(std::size_t m) const { return morphisms_[m].src; }
  std::size_t tgt(std::size_t m) const { return morphisms_[m].tgt; }
  std::size_t identity(std::size_t obj) const { return identities_[obj]; }
  std::size_t then(std::size_t a, std::size_t b) const {
    return then_[a * morphisms_.size() + b];
  }
  const std::string& name() const { return name_; }

  void audit() const;

 private:
  std::size_t num_objects_;
  std::vector<FiniteGroupoid::Morphism> morphisms_;
  std::vector<std::size_t> identities_;
  std::vector<std::size_t> then_;
  std::string name_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

CategoryPtr category_from_groupoid(const FiniteGroupoid& x);
/// One object; table is the classical multiplication m(a, b) = a*b with the
/// given identity element, composed diagrammatically like delooping.
CategoryPtr monoid_category(const std::vector<std::vector<std::size_t>>& table,
                            std::size_t identity, std::string name = "monoid");
/// Free category on the linear quiver 0 -> 1 -> ... -> n-1: one morphism
/// i -> j for every i <= j.
CategoryPtr path_category(std::size_t num_objects);
CategoryPtr category_disjoint_union(const FiniteCategory& a, const FiniteCategory& b);

/// Algebra with basis the morphisms and product e_f e_g = e_(f then g) when
/// composable, 0 otherwise; associative and unital by the category axioms.
struct CategoryAlgebra {
  CategoryPtr cat;

  std::size_t dimension() const { return cat->num_morphisms(); }
  std::optional<std::size_t> basis_product(std::size_t i, std::size_t j) const;
  std::vector<Cyclotomic> multiply(const std::vector<Cyclotomic>& a,
                                   const std::vector<Cyclotomic>& b) const;
  std::vector<Cyclotomic> unit() const;  // sum of the identities
};

CategoryAlgebra category_algebra(CategoryPtr cat);

/// Scalar-valued correspondence between groupoids: a span X <- Q -> X' with
/// one cyclotomic value per object of Q, constant on isomorphism classes.
struct Bibrane {
  GroupoidPtr carrier;     // Q
  GroupoidFunctor source;  // Q -> X
  GroupoidFunctor target;  // Q -> X'
  std::vector<Cyclotomic> value;  // per object of Q
};

/// Validates the span shape and constancy on connected components.
Bibrane make_bibrane(GroupoidFunctor source, GroupoidFunctor target,
                     std::vector<Cyclotomic> value);

/// Composite over the middle foot: the carrier is the strict pullback of
/// target and source, and the value at a matching pair is the product.
/// Throws when the middle feet differ.
Bibrane bibrane_fuse(const Bibrane& v, const Bibrane& w);

/// Internal category structure on a span Q over X: composition is a functor
/// from the strict pullback of (target, source) back into Q.
struct InternalCategory {
  GroupoidFunctor source;       // Q -> X
  GroupoidFunctor target;       // Q -> X
  PullbackGroupoid composable;  // pullback of (target, source)
  GroupoidFunctor compose;      // composable.total -> Q
};

/// Builds the pullback and the composition functor from object/morphism
/// rules on composable pairs; audits functoriality.
InternalCategory make_internal_category(
    const GroupoidFunctor& source, const GroupoidFunctor& target,
    const std::function<std::size_t(std::size_t, std::size_t)>& compose_objects,
    const std::function<std::size_t(std::size_t, std::size_t)>& compose_morphisms);

/// The group as a span over the point with composition (a, b) -> b*a; its
/// monoid product is group-algebra convolution.
InternalCategory convolution_span(const GroupPtr& group);

/// Push-pull product: (V * W)(q) = sum over composable pairs p with
/// compose(p) = q of V(first) W(second). With cardinality_weighted set each
/// term is divided by |Aut(p)| in the composable groupoid; the plain sum is
/// the default and recovers the category algebra on group spans.
Bibrane bibrane_monoid_product(const InternalCategory& ic, const Bibrane& v, const Bibrane& w,
                               bool cardinality_weighted = false);

/// Convolution of dimension vectors indexed by G: out[mul(h, g)] += d[g] d'[h].
std::vector<Int> graded_convolution(const GroupPtr& group, const std::vector<Int>& d,
                                    const std::vector<Int>& dp);

}  // namespace fgt
