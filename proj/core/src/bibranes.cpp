#include "fgt/bibranes.hpp"

#include <string>
#include <utility>

#include "fgt/errors.hpp"

namespace fgt {

FiniteCategory::FiniteCategory(std::size_t num_objects,
                               std::vector<FiniteGroupoid::Morphism> morphisms,
                               std::vector<std::size_t> identities,
                               std::vector<std::size_t> then_table, std::string name)
    : num_objects_(num_objects),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      then_(std::move(then_table)),
      name_(std::move(name)) {
  audit();
}

void FiniteCategory::audit() const {
  auto fail = [this](const std::string& what) {
    throw ValidationError("category '" + name_ + "': " + what);
  };
  const std::size_t m = morphisms_.size();
  if (identities_.size() != num_objects_) fail("identity list length differs from object count");
  if (then_.size() != m * m) fail("composition table has the wrong size");
  for (std::size_t i = 0; i < m; ++i)
    if (morphisms_[i].src >= num_objects_ || morphisms_[i].tgt >= num_objects_)
      fail("morphism " + std::to_string(i) + " has an endpoint out of range");
  for (std::size_t x = 0; x < num_objects_; ++x) {
    std::size_t id = identities_[x];
    if (id >= m || morphisms_[id].src != x || morphisms_[id].tgt != x)
      fail("identity of object " + std::to_string(x) + " is not an endomorphism of it");
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t c = then(a, b);
      if (morphisms_[a].tgt != morphisms_[b].src) {
        if (c != npos)
          fail("composite defined for non-composable pair (" + std::to_string(a) + "," +
               std::to_string(b) + ")");
        continue;
      }
      if (c == npos)
        fail("composite missing for composable pair (" + std::to_string(a) + "," +
             std::to_string(b) + ")");
      if (c >= m || morphisms_[c].src != morphisms_[a].src ||
          morphisms_[c].tgt != morphisms_[b].tgt)
        fail("composite of (" + std::to_string(a) + "," + std::to_string(b) +
             ") has wrong endpoints");
    }
  for (std::size_t a = 0; a < m; ++a) {
    if (then(identities_[morphisms_[a].src], a) != a)
      fail("left identity law fails at morphism " + std::to_string(a));
    if (then(a, identities_[morphisms_[a].tgt]) != a)
      fail("right identity law fails at morphism " + std::to_string(a));
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (morphisms_[a].tgt != morphisms_[b].src) continue;
      std::size_t ab = then(a, b);
      for (std::size_t c = 0; c < m; ++c) {
        if (morphisms_[b].tgt != morphisms_[c].src) continue;
        if (then(ab, c) != then(a, then(b, c)))
          fail("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(c) + ")");
      }
    }
}

CategoryPtr category_from_groupoid(const FiniteGroupoid& x) {
  std::vector<FiniteGroupoid::Morphism> mor(x.num_morphisms());
  std::vector<std::size_t> ids(x.num_objects());
  std::vector<std::size_t> table(x.num_morphisms() * x.num_morphisms());
  for (std::size_t i = 0; i < x.num_morphisms(); ++i) mor[i] = {x.src(i), x.tgt(i)};
  for (std::size_t o = 0; o < x.num_objects(); ++o) ids[o] = x.identity(o);
  for (std::size_t a = 0; a < x.num_morphisms(); ++a)
    for (std::size_t b = 0; b < x.num_morphisms(); ++b)
      table[a * x.num_morphisms() + b] = x.then(a, b);
  return std::make_shared<FiniteCategory>(x.num_objects(), std::move(mor), std::move(ids),
                                          std::move(table), x.name());
}

CategoryPtr monoid_category(const std::vector<std::vector<std::size_t>>& table,
                            std::size_t identity, std::string name) {
  const std::size_t n = table.size();
  for (const auto& row : table)
    if (row.size() != n) throw ValidationError("monoid table is not square");
  std::vector<FiniteGroupoid::Morphism> mor(n, {0, 0});
  std::vector<std::size_t> then_table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (table[b][a] >= n) throw ValidationError("monoid table entry out of range");
      then_table[a * n + b] = table[b][a];  // diagrammatic: a then b = b*a
    }
  return std::make_shared<FiniteCategory>(1, std::move(mor), std::vector<std::size_t>{identity},
                                          std::move(then_table), std::move(name));
}

CategoryPtr path_category(std::size_t num_objects) {
  std::vector<FiniteGroupoid::Morphism> mor;
  std::vector<std::vector<std::size_t>> index(
      num_objects, std::vector<std::size_t>(num_objects, FiniteCategory::npos));
  for (std::size_t i = 0; i < num_objects; ++i)
    for (std::size_t j = i; j < num_objects; ++j) {
      index[i][j] = mor.size();
      mor.push_back({i, j});
    }
  std::vector<std::size_t> ids(num_objects);
  for (std::size_t i = 0; i < num_objects; ++i) ids[i] = index[i][i];
  const std::size_t m = mor.size();
  std::vector<std::size_t> table(m * m, FiniteCategory::npos);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (mor[a].tgt == mor[b].src) table[a * m + b] = index[mor[a].src][mor[b].tgt];
  return std::make_shared<FiniteCategory>(num_objects, std::move(mor), std::move(ids),
                                          std::move(table),
                                          "path(" + std::to_string(num_objects) + ")");
}

CategoryPtr category_disjoint_union(const FiniteCategory& a, const FiniteCategory& b) {
  const std::size_t ma = a.num_morphisms(), mb = b.num_morphisms();
  const std::size_t m = ma + mb;
  std::vector<FiniteGroupoid::Morphism> mor(m);
  std::vector<std::size_t> ids(a.num_objects() + b.num_objects());
  std::vector<std::size_t> table(m * m, FiniteCategory::npos);
  for (std::size_t i = 0; i < ma; ++i) mor[i] = {a.src(i), a.tgt(i)};
  for (std::size_t i = 0; i < mb; ++i)
    mor[ma + i] = {a.num_objects() + b.src(i), a.num_objects() + b.tgt(i)};
  for (std::size_t o = 0; o < a.num_objects(); ++o) ids[o] = a.identity(o);
  for (std::size_t o = 0; o < b.num_objects(); ++o)
    ids[a.num_objects() + o] = ma + b.identity(o);
  for (std::size_t x = 0; x < ma; ++x)
    for (std::size_t y = 0; y < ma; ++y) table[x * m + y] = a.then(x, y);
  for (std::size_t x = 0; x < mb; ++x)
    for (std::size_t y = 0; y < mb; ++y) {
      std::size_t c = b.then(x, y);
      table[(ma + x) * m + (ma + y)] = c == FiniteCategory::npos ? c : ma + c;
    }
  return std::make_shared<FiniteCategory>(ids.size(), std::move(mor), std::move(ids),
                                          std::move(table), a.name() + "+" + b.name());
}

std::optional<std::size_t> CategoryAlgebra::basis_product(std::size_t i, std::size_t j) const {
  std::size_t t = cat->then(i, j);
  if (t == FiniteCategory::npos) return std::nullopt;
  return t;
}

std::vector<Cyclotomic> CategoryAlgebra::multiply(const std::vector<Cyclotomic>& a,
                                                  const std::vector<Cyclotomic>& b) const {
  if (a.size() != dimension() || b.size() != dimension())
    throw PreconditionError("algebra element has wrong length");
  std::vector<Cyclotomic> out(dimension());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      if (auto t = basis_product(i, j)) out[*t] += a[i] * b[j];
    }
  }
  return out;
}

std::vector<Cyclotomic> CategoryAlgebra::unit() const {
  std::vector<Cyclotomic> out(dimension());
  for (std::size_t o = 0; o < cat->num_objects(); ++o)
    out[cat->identity(o)] = Cyclotomic(Rational(1));
  return out;
}

CategoryAlgebra category_algebra(CategoryPtr cat) {
  if (!cat) throw PreconditionError("category algebra needs a category");
  return {std::move(cat)};
}

Bibrane make_bibrane(GroupoidFunctor source, GroupoidFunctor target,
                     std::vector<Cyclotomic> value) {
  source.audit();
  target.audit();
  if (!(*source.dom == *target.dom))
    throw ValidationError("bibrane feet start from different correspondence tips");
  if (value.size() != source.dom->num_objects())
    throw ValidationError("bibrane needs one value per object of the correspondence");
  auto comp = connected_components(*source.dom);
  for (std::size_t i = 0; i < value.size(); ++i)
    for (std::size_t j = i + 1; j < value.size(); ++j)
      if (comp[i] == comp[j] && !(value[i] == value[j]))
        throw ValidationError("bibrane value varies on an isomorphism class");
  Bibrane out;
  out.carrier = source.dom;
  out.source = std::move(source);
  out.target = std::move(target);
  out.value = std::move(value);
  return out;
}

Bibrane bibrane_fuse(const Bibrane& v, const Bibrane& w) {
  if (!(*v.target.cod == *w.source.cod))
    throw ValidationError("bibrane middle feet do not match");
  auto pb = pullback(v.target, w.source);
  std::vector<Cyclotomic> value;
  value.reserve(pb.object_pairs.size());
  for (const auto& [qa, qb] : pb.object_pairs) value.push_back(v.value[qa] * w.value[qb]);
  return make_bibrane(compose_functors(pb.to_left, v.source),
                      compose_functors(pb.to_right, w.target), std::move(value));
}

InternalCategory make_internal_category(
    const GroupoidFunctor& source, const GroupoidFunctor& target,
    const std::function<std::size_t(std::size_t, std::size_t)>& compose_objects,
    const std::function<std::size_t(std::size_t, std::size_t)>& compose_morphisms) {
  source.audit();
  target.audit();
  if (!(*source.dom == *target.dom) || !(*source.cod == *target.cod))
    throw ValidationError("span feet are not parallel");
  InternalCategory out;
  out.source = source;
  out.target = target;
  out.composable = pullback(target, source);
  GroupoidFunctor comp;
  comp.dom = out.composable.total;
  comp.cod = source.dom;
  comp.object_map.reserve(out.composable.object_pairs.size());
  for (const auto& [a, b] : out.composable.object_pairs)
    comp.object_map.push_back(compose_objects(a, b));
  comp.morphism_map.reserve(out.composable.morphism_pairs.size());
  for (const auto& [a, b] : out.composable.morphism_pairs)
    comp.morphism_map.push_back(compose_morphisms(a, b));
  comp.audit();
  out.compose = std::move(comp);
  return out;
}

InternalCategory convolution_span(const GroupPtr& group) {
  auto q = discrete_groupoid(group->order());
  auto pt = discrete_groupoid(1);
  GroupoidFunctor feet;
  feet.dom = q;
  feet.cod = pt;
  feet.object_map.assign(group->order(), 0);
  feet.morphism_map.assign(group->order(), 0);
  auto compose = [group](std::size_t a, std::size_t b) { return group->mul(b, a); };
  return make_internal_category(feet, feet, compose, compose);
}

Bibrane bibrane_monoid_product(const InternalCategory& ic, const Bibrane& v, const Bibrane& w,
                               bool cardinality_weighted) {
  if (!(*v.carrier == *ic.source.dom) || !(*w.carrier == *ic.source.dom))
    throw PreconditionError("bibranes do not live on the span carrier");
  std::vector<Cyclotomic> value(ic.source.dom->num_objects());
  for (std::size_t p = 0; p < ic.composable.object_pairs.size(); ++p) {
    const auto& [a, b] = ic.composable.object_pairs[p];
    Cyclotomic term = v.value[a] * w.value[b];
    if (cardinality_weighted) {
      std::size_t aut = ic.composable.total->automorphisms(p).size();
      term = term * Cyclotomic(Rational(1, Int(aut)));
    }
    value[ic.compose.object_map[p]] += term;
  }
  return make_bibrane(ic.source, ic.target, std::move(value));
}

std::vector<Int> graded_convolution(const GroupPtr& group, const std::vector<Int>& d,
                                    const std::vector<Int>& dp) {
  const std::size_t n = group->order();
  if (d.size() != n || dp.size() != n)
    throw PreconditionError("dimension vectors need one entry per element");
  std::vector<Int> out(n, Int(0));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) out[group->mul(h, g)] += d[g] * dp[h];
  return out;
}

}  // namespace fgt
