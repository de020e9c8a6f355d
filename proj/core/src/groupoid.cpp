#include "fgt/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "fgt/errors.hpp"

namespace fgt {

namespace {

constexpr std::size_t npos = FiniteGroupoid::npos;

std::string where(const std::string& name, const std::string& detail) {
  return "groupoid '" + name + "': " + detail;
}

/// Fills the dense composition table from a composability-respecting rule and
/// constructs (the constructor audits every axiom).
GroupoidPtr build(std::size_t num_objects, std::vector<FiniteGroupoid::Morphism> morphisms,
                  std::vector<std::size_t> identities, std::vector<std::size_t> inverses,
                  const std::function<std::size_t(std::size_t, std::size_t)>& comp,
                  std::string name) {
  const std::size_t m = morphisms.size();
  if (m > 2048) throw SizeGuardError(where(name, "composition table would exceed 2048^2 entries"));
  std::vector<std::size_t> table(m * m, npos);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (morphisms[a].tgt == morphisms[b].src) table[a * m + b] = comp(a, b);
  return std::make_shared<FiniteGroupoid>(num_objects, std::move(morphisms), std::move(identities),
                                          std::move(inverses), std::move(table), std::move(name));
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::size_t num_objects, std::vector<Morphism> morphisms,
                               std::vector<std::size_t> identities,
                               std::vector<std::size_t> inverses,
                               std::vector<std::size_t> then_table, std::string name)
    : num_objects_(num_objects),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      inverses_(std::move(inverses)),
      then_(std::move(then_table)),
      name_(std::move(name)) {
  if (morphisms_.size() > 2048)
    throw SizeGuardError(where(name_, "composition table would exceed 2048^2 entries"));
  audit();
}

std::vector<std::size_t> FiniteGroupoid::hom(std::size_t x, std::size_t y) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < morphisms_.size(); ++m)
    if (morphisms_[m].src == x && morphisms_[m].tgt == y) out.push_back(m);
  return out;
}

void FiniteGroupoid::audit() const {
  const std::size_t m = morphisms_.size();
  if (identities_.size() != num_objects_)
    throw ValidationError(where(name_, "identity list length differs from object count"));
  if (inverses_.size() != m)
    throw ValidationError(where(name_, "inverse list length differs from morphism count"));
  if (then_.size() != m * m)
    throw ValidationError(where(name_, "composition table has wrong size"));
  for (std::size_t a = 0; a < m; ++a) {
    if (morphisms_[a].src >= num_objects_ || morphisms_[a].tgt >= num_objects_)
      throw ValidationError(where(name_, "morphism " + std::to_string(a) + " has out-of-range endpoint"));
    if (inverses_[a] >= m)
      throw ValidationError(where(name_, "inverse of morphism " + std::to_string(a) + " is out of range"));
  }
  for (std::size_t o = 0; o < num_objects_; ++o) {
    std::size_t id = identities_[o];
    if (id >= m || morphisms_[id].src != o || morphisms_[id].tgt != o)
      throw ValidationError(where(name_, "identity of object " + std::to_string(o) + " is not an endomorphism"));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t c = then_[a * m + b];
      if (morphisms_[a].tgt != morphisms_[b].src) {
        if (c != npos)
          throw ValidationError(where(name_, "composite defined for non-composable pair (" +
                                                 std::to_string(a) + "," + std::to_string(b) + ")"));
        continue;
      }
      if (c == npos)
        throw ValidationError(where(name_, "composite missing for composable pair (" +
                                               std::to_string(a) + "," + std::to_string(b) + ")"));
      if (c >= m || morphisms_[c].src != morphisms_[a].src || morphisms_[c].tgt != morphisms_[b].tgt)
        throw ValidationError(where(name_, "composite of (" + std::to_string(a) + "," +
                                               std::to_string(b) + ") has wrong endpoints"));
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (then(identities_[morphisms_[a].src], a) != a || then(a, identities_[morphisms_[a].tgt]) != a)
      throw ValidationError(where(name_, "identity law fails at morphism " + std::to_string(a)));
    std::size_t ai = inverses_[a];
    if (morphisms_[ai].src != morphisms_[a].tgt || morphisms_[ai].tgt != morphisms_[a].src ||
        then(a, ai) != identities_[morphisms_[a].src] || then(ai, a) != identities_[morphisms_[a].tgt])
      throw ValidationError(where(name_, "inverse law fails at morphism " + std::to_string(a)));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t ab = then_[a * m + b];
      if (ab == npos) continue;
      for (std::size_t c = 0; c < m; ++c) {
        std::size_t bc = then_[b * m + c];
        if (bc == npos) continue;
        if (then(ab, c) != then(a, bc))
          throw ValidationError(where(name_, "associativity fails at (" + std::to_string(a) + "," +
                                                 std::to_string(b) + "," + std::to_string(c) + ")"));
      }
    }
  }
}

void GroupoidFunctor::audit() const {
  if (!dom || !cod) throw ValidationError("functor: missing endpoint groupoid");
  if (object_map.size() != dom->num_objects() || morphism_map.size() != dom->num_morphisms())
    throw ValidationError("functor: map sizes differ from domain");
  for (std::size_t o : object_map)
    if (o >= cod->num_objects()) throw ValidationError("functor: object image out of range");
  const std::size_t m = dom->num_morphisms();
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t fa = morphism_map[a];
    if (fa >= cod->num_morphisms()) throw ValidationError("functor: morphism image out of range");
    if (cod->src(fa) != object_map[dom->src(a)] || cod->tgt(fa) != object_map[dom->tgt(a)])
      throw ValidationError("functor: morphism " + std::to_string(a) + " breaks endpoints");
  }
  for (std::size_t o = 0; o < dom->num_objects(); ++o)
    if (morphism_map[dom->identity(o)] != cod->identity(object_map[o]))
      throw ValidationError("functor: identity of object " + std::to_string(o) + " not preserved");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t ab = dom->then(a, b);
      if (ab == npos) continue;
      if (morphism_map[ab] != cod->then(morphism_map[a], morphism_map[b]))
        throw ValidationError("functor: composition not preserved at (" + std::to_string(a) + "," +
                              std::to_string(b) + ")");
    }
}

// -- Constructions ------------------------------------------------------------

GroupoidPtr delooping(const GroupPtr& group) {
  const std::size_t n = group->order();
  std::vector<FiniteGroupoid::Morphism> mor(n, {0, 0});
  std::vector<std::size_t> inv(n);
  for (std::size_t g = 0; g < n; ++g) inv[g] = group->inv(g);
  return build(1, std::move(mor), {0}, std::move(inv),
               [&](std::size_t a, std::size_t b) { return group->mul(b, a); },
               "B(" + group->name() + ")");
}

GroupoidPtr action_groupoid(const GroupPtr& group, std::size_t num_points,
                            const std::function<std::size_t(std::size_t, std::size_t)>& act,
                            std::string name) {
  const std::size_t n = group->order();
  std::vector<FiniteGroupoid::Morphism> mor(num_points * n);
  std::vector<std::size_t> ids(num_points);
  std::vector<std::size_t> inv(num_points * n);
  for (std::size_t p = 0; p < num_points; ++p) {
    ids[p] = p * n;  // (p, e)
    for (std::size_t g = 0; g < n; ++g) {
      std::size_t q = act(g, p);
      if (q >= num_points) throw ValidationError(where(name, "action image out of range"));
      mor[p * n + g] = {p, q};
      inv[p * n + g] = q * n + group->inv(g);
    }
  }
  return build(num_points, std::move(mor), std::move(ids), std::move(inv),
               [&, n](std::size_t a, std::size_t b) {
                 // (p, g) then (act(g,p), h) = (p, h g)
                 return (a / n) * n + group->mul(b % n, a % n);
               },
               std::move(name));
}

GroupoidPtr universal_bundle_total(const GroupPtr& group) {
  return action_groupoid(
      group, group->order(), [&](std::size_t g, std::size_t x) { return group->mul(g, x); },
      "E(" + group->name() + ")");
}

UniversalBundle universal_bundle(const GroupPtr& group) {
  UniversalBundle out;
  out.total = universal_bundle_total(group);
  out.base = delooping(group);
  const std::size_t n = group->order();
  GroupoidFunctor proj;
  proj.dom = out.total;
  proj.cod = out.base;
  proj.object_map.assign(n, 0);
  proj.morphism_map.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) proj.morphism_map[i] = i % n;
  proj.audit();
  out.projection = std::move(proj);
  return out;
}

GroupoidPtr loop_groupoid(const GroupPtr& group) {
  return action_groupoid(
      group, group->order(), [&](std::size_t g, std::size_t x) { return group->conj(g, x); },
      "Loop(" + group->name() + ")");
}

GroupoidPtr inertia_groupoid(const FiniteGroupoid& x, std::string name) {
  // Objects: (o, a) with a an automorphism of o, ordered by (o, a).
  std::vector<std::pair<std::size_t, std::size_t>> objs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> obj_index;
  for (std::size_t o = 0; o < x.num_objects(); ++o)
    for (std::size_t a : x.automorphisms(o)) {
      obj_index[{o, a}] = objs.size();
      objs.emplace_back(o, a);
    }
  // Morphisms: (i, m) with m out of objs[i].first; target automorphism is
  // forced to m^-1 a m, so composability and inverses come from x.
  std::vector<FiniteGroupoid::Morphism> mor;
  std::vector<std::pair<std::size_t, std::size_t>> tags;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> mor_index;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    auto [o, a] = objs[i];
    for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
      if (x.src(m) != o) continue;
      std::size_t conj = x.then(x.inverse(m), x.then(a, m));
      std::size_t j = obj_index.at({x.tgt(m), conj});
      mor_index[{i, m}] = mor.size();
      mor.push_back({i, j});
      tags.emplace_back(i, m);
    }
  }
  std::vector<std::size_t> ids(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i)
    ids[i] = mor_index.at({i, x.identity(objs[i].first)});
  std::vector<std::size_t> inv(mor.size());
  for (std::size_t k = 0; k < mor.size(); ++k)
    inv[k] = mor_index.at({mor[k].tgt, x.inverse(tags[k].second)});
  return build(objs.size(), std::move(mor), std::move(ids), std::move(inv),
               [&](std::size_t a, std::size_t b) {
                 return mor_index.at({tags[a].first, x.then(tags[a].second, tags[b].second)});
               },
               name.empty() ? "Inertia(" + x.name() + ")" : std::move(name));
}

GroupoidPtr free_loop_space(const FiniteGroupoid& x) {
  return inertia_groupoid(x, "L(" + x.name() + ")");
}

GroupoidPtr discrete_groupoid(std::size_t n) {
  std::vector<FiniteGroupoid::Morphism> mor(n);
  std::vector<std::size_t> ids(n), inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    mor[i] = {i, i};
    ids[i] = i;
    inv[i] = i;
  }
  return build(n, std::move(mor), std::move(ids), std::move(inv),
               [](std::size_t a, std::size_t) { return a; }, "discrete(" + std::to_string(n) + ")");
}

GroupoidPtr pair_groupoid(std::size_t n) {
  std::vector<FiniteGroupoid::Morphism> mor(n * n);
  std::vector<std::size_t> ids(n), inv(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = i * n + i;
    for (std::size_t j = 0; j < n; ++j) {
      mor[i * n + j] = {i, j};
      inv[i * n + j] = j * n + i;
    }
  }
  return build(n, std::move(mor), std::move(ids), std::move(inv),
               [n](std::size_t a, std::size_t b) { return (a / n) * n + b % n; },
               "pair(" + std::to_string(n) + ")");
}

GroupoidPtr product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const std::size_t mb = b.num_morphisms();
  const std::size_t nobj = a.num_objects() * b.num_objects();
  std::vector<FiniteGroupoid::Morphism> mor(a.num_morphisms() * mb);
  std::vector<std::size_t> ids(nobj);
  std::vector<std::size_t> inv(mor.size());
  for (std::size_t p = 0; p < a.num_morphisms(); ++p)
    for (std::size_t q = 0; q < mb; ++q) {
      mor[p * mb + q] = {a.src(p) * b.num_objects() + b.src(q), a.tgt(p) * b.num_objects() + b.tgt(q)};
      inv[p * mb + q] = a.inverse(p) * mb + b.inverse(q);
    }
  for (std::size_t i = 0; i < a.num_objects(); ++i)
    for (std::size_t j = 0; j < b.num_objects(); ++j)
      ids[i * b.num_objects() + j] = a.identity(i) * mb + b.identity(j);
  return build(nobj, std::move(mor), std::move(ids), std::move(inv),
               [&, mb](std::size_t p, std::size_t q) {
                 std::size_t ca = a.then(p / mb, q / mb), cb = b.then(p % mb, q % mb);
                 return (ca == npos || cb == npos) ? npos : ca * mb + cb;
               },
               a.name() + "x" + b.name());
}

// -- Mapping groupoids ---------------------------------------------------------

namespace {

/// DFS over morphism assignments extending a fixed object map. Identities and
/// inverses are forced, compositions propagated to a fixpoint. With
/// `injective` set the assignment must be one-to-one. `emit` returns true to
/// stop the search.
class Assigner {
 public:
  Assigner(const FiniteGroupoid& dom, const FiniteGroupoid& cod,
           std::vector<std::size_t> object_map, bool injective,
           std::function<bool(const std::vector<std::size_t>&)> emit)
      : dom_(dom), cod_(cod), omap_(std::move(object_map)), injective_(injective),
        emit_(std::move(emit)) {
    asg_.assign(dom.num_morphisms(), npos);
    used_.assign(cod.num_morphisms(), 0);
  }

  bool run() {
    std::vector<std::size_t> trail;
    for (std::size_t o = 0; o < dom_.num_objects(); ++o)
      if (!set(dom_.identity(o), cod_.identity(omap_[o]), trail)) return false;
    if (!propagate(trail)) return false;
    return dfs();
  }

 private:
  bool set(std::size_t m, std::size_t im, std::vector<std::size_t>& trail) {
    if (asg_[m] != npos) return asg_[m] == im;
    if (cod_.src(im) != omap_[dom_.src(m)] || cod_.tgt(im) != omap_[dom_.tgt(m)]) return false;
    if (injective_) {
      if (used_[im]) return false;
      used_[im] = 1;
    }
    asg_[m] = im;
    trail.push_back(m);
    return true;
  }

  bool propagate(std::vector<std::size_t>& trail) {
    std::size_t done = 0;
    while (done < trail.size()) {
      std::size_t a = trail[done++];
      if (!set(dom_.inverse(a), cod_.inverse(asg_[a]), trail)) return false;
      for (std::size_t b = 0; b < asg_.size(); ++b) {
        if (asg_[b] == npos) continue;
        std::size_t ab = dom_.then(a, b);
        if (ab != npos && !set(ab, cod_.then(asg_[a], asg_[b]), trail)) return false;
        std::size_t ba = dom_.then(b, a);
        if (ba != npos && !set(ba, cod_.then(asg_[b], asg_[a]), trail)) return false;
      }
    }
    return true;
  }

  void undo(const std::vector<std::size_t>& trail) {
    for (std::size_t m : trail) {
      if (injective_) used_[asg_[m]] = 0;
      asg_[m] = npos;
    }
  }

  bool dfs() {
    std::size_t next = npos;
    for (std::size_t m = 0; m < asg_.size(); ++m)
      if (asg_[m] == npos) {
        next = m;
        break;
      }
    if (next == npos) return emit_(asg_);
    for (std::size_t im : cod_.hom(omap_[dom_.src(next)], omap_[dom_.tgt(next)])) {
      std::vector<std::size_t> trail;
      if (set(next, im, trail) && propagate(trail)) {
        if (dfs()) return true;
      }
      undo(trail);
    }
    return false;
  }

  const FiniteGroupoid& dom_;
  const FiniteGroupoid& cod_;
  std::vector<std::size_t> omap_;
  bool injective_;
  std::vector<std::size_t> asg_;
  std::vector<char> used_;
  std::function<bool(const std::vector<std::size_t>&)> emit_;
};

}  // namespace

std::vector<GroupoidFunctor> all_functors(const GroupoidPtr& shape, const GroupoidPtr& target,
                                          const Int& cap) {
  std::vector<GroupoidFunctor> out;
  const std::size_t so = shape->num_objects();
  if (so > 0 && target->num_objects() == 0) return out;
  std::vector<std::size_t> omap(so, 0);
  Int seen = 0;
  while (true) {
    Int block = 1;
    for (std::size_t m = 0; m < shape->num_morphisms() && block != 0; ++m)
      block *= Int(target->hom(omap[shape->src(m)], omap[shape->tgt(m)]).size());
    seen += (block == 0 ? Int(1) : block);
    if (seen > cap)
      throw SizeGuardError("functor enumeration: candidate count exceeds cap of " + cap.str());
    if (block != 0) {
      Assigner search(*shape, *target, omap, false, [&](const std::vector<std::size_t>& asg) {
        out.push_back(GroupoidFunctor{shape, target, omap, asg});
        return false;
      });
      search.run();
    }
    // advance odometer, object 0 most significant: lexicographic order
    std::size_t pos = so;
    while (pos > 0) {
      --pos;
      if (++omap[pos] < target->num_objects()) break;
      omap[pos] = 0;
      if (pos == 0) return out;
    }
    if (so == 0) return out;
  }
}

MappingGroupoid mapping_groupoid(const GroupoidPtr& shape, const GroupoidPtr& target,
                                 const Int& cap) {
  MappingGroupoid out;
  out.functors = all_functors(shape, target, cap);
  const std::size_t nf = out.functors.size();
  const std::size_t so = shape->num_objects();

  std::vector<FiniteGroupoid::Morphism> mor;
  std::vector<std::vector<std::size_t>> comps;
  std::map<std::pair<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>, std::size_t>
      mor_index;
  Int seen = 0;
  for (std::size_t i = 0; i < nf; ++i) {
    for (std::size_t j = 0; j < nf; ++j) {
      const auto& f = out.functors[i];
      const auto& g = out.functors[j];
      std::vector<std::vector<std::size_t>> choices(so);
      Int block = 1;
      for (std::size_t o = 0; o < so; ++o) {
        choices[o] = target->hom(f.object_map[o], g.object_map[o]);
        block *= Int(choices[o].size());
      }
      seen += (block == 0 ? Int(1) : block);
      if (seen > cap)
        throw SizeGuardError("natural transformation enumeration: candidate count exceeds cap of " +
                             cap.str());
      if (block == 0) continue;
      std::vector<std::size_t> pick(so, 0);
      while (true) {
        std::vector<std::size_t> eta(so);
        for (std::size_t o = 0; o < so; ++o) eta[o] = choices[o][pick[o]];
        bool natural = true;
        for (std::size_t m = 0; m < shape->num_morphisms() && natural; ++m)
          natural = target->then(f.morphism_map[m], eta[shape->tgt(m)]) ==
                    target->then(eta[shape->src(m)], g.morphism_map[m]);
        if (natural) {
          mor_index[{{i, j}, eta}] = mor.size();
          mor.push_back({i, j});
          comps.push_back(std::move(eta));
        }
        std::size_t pos = so;
        bool rolled = true;
        while (pos > 0) {
          --pos;
          if (++pick[pos] < choices[pos].size()) {
            rolled = false;
            break;
          }
          pick[pos] = 0;
        }
        if (rolled || so == 0) break;
      }
    }
  }

  std::vector<std::size_t> ids(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    std::vector<std::size_t> eta(so);
    for (std::size_t o = 0; o < so; ++o) eta[o] = target->identity(out.functors[i].object_map[o]);
    ids[i] = mor_index.at({{i, i}, eta});
  }
  std::vector<std::size_t> inv(mor.size());
  for (std::size_t k = 0; k < mor.size(); ++k) {
    std::vector<std::size_t> eta(so);
    for (std::size_t o = 0; o < so; ++o) eta[o] = target->inverse(comps[k][o]);
    inv[k] = mor_index.at({{mor[k].tgt, mor[k].src}, eta});
  }
  auto ends = mor;  // build() consumes mor; the composition rule still needs endpoints
  out.hom = build(nf, std::move(mor), std::move(ids), std::move(inv),
                  [&, so](std::size_t a, std::size_t b) {
                    std::vector<std::size_t> eta(so);
                    for (std::size_t o = 0; o < so; ++o)
                      eta[o] = target->then(comps[a][o], comps[b][o]);
                    return mor_index.at({{ends[a].src, ends[b].tgt}, eta});
                  },
                  "Hom(" + shape->name() + "," + target->name() + ")");
  out.components = std::move(comps);
  return out;
}

GroupoidFunctor compose_functors(const GroupoidFunctor& f, const GroupoidFunctor& g) {
  if (f.cod != g.dom && !(*f.cod == *g.dom))
    throw ValidationError("functor composition: endpoints do not match");
  GroupoidFunctor out;
  out.dom = f.dom;
  out.cod = g.cod;
  out.object_map.reserve(f.object_map.size());
  for (std::size_t o : f.object_map) out.object_map.push_back(g.object_map[o]);
  out.morphism_map.reserve(f.morphism_map.size());
  for (std::size_t m : f.morphism_map) out.morphism_map.push_back(g.morphism_map[m]);
  return out;
}

// -- Limits and invariants -----------------------------------------------------

PullbackGroupoid pullback(const GroupoidFunctor& left, const GroupoidFunctor& right) {
  if (!(left.cod == right.cod) && !(*left.cod == *right.cod))
    throw ValidationError("pullback: legs have different codomains");
  PullbackGroupoid out;
  const auto& a = *left.dom;
  const auto& b = *right.dom;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> obj_index, mor_index;
  for (std::size_t i = 0; i < a.num_objects(); ++i)
    for (std::size_t j = 0; j < b.num_objects(); ++j)
      if (left.object_map[i] == right.object_map[j]) {
        obj_index[{i, j}] = out.object_pairs.size();
        out.object_pairs.emplace_back(i, j);
      }
  std::vector<FiniteGroupoid::Morphism> mor;
  for (std::size_t p = 0; p < a.num_morphisms(); ++p)
    for (std::size_t q = 0; q < b.num_morphisms(); ++q)
      if (left.morphism_map[p] == right.morphism_map[q]) {
        mor_index[{p, q}] = out.morphism_pairs.size();
        out.morphism_pairs.emplace_back(p, q);
        mor.push_back({obj_index.at({a.src(p), b.src(q)}), obj_index.at({a.tgt(p), b.tgt(q)})});
      }
  std::vector<std::size_t> ids(out.object_pairs.size());
  for (std::size_t k = 0; k < out.object_pairs.size(); ++k)
    ids[k] = mor_index.at({a.identity(out.object_pairs[k].first), b.identity(out.object_pairs[k].second)});
  std::vector<std::size_t> inv(mor.size());
  for (std::size_t k = 0; k < mor.size(); ++k)
    inv[k] = mor_index.at({a.inverse(out.morphism_pairs[k].first), b.inverse(out.morphism_pairs[k].second)});
  out.total = build(out.object_pairs.size(), std::move(mor), std::move(ids), std::move(inv),
                    [&](std::size_t s, std::size_t t) {
                      std::size_t ca = a.then(out.morphism_pairs[s].first, out.morphism_pairs[t].first);
                      std::size_t cb = b.then(out.morphism_pairs[s].second, out.morphism_pairs[t].second);
                      if (ca == npos || cb == npos) return npos;
                      return mor_index.at({ca, cb});
                    },
                    "pullback(" + a.name() + "," + b.name() + ")");
  out.to_left.dom = out.total;
  out.to_left.cod = left.dom;
  out.to_right.dom = out.total;
  out.to_right.cod = right.dom;
  for (auto [i, j] : out.object_pairs) {
    out.to_left.object_map.push_back(i);
    out.to_right.object_map.push_back(j);
  }
  for (auto [p, q] : out.morphism_pairs) {
    out.to_left.morphism_map.push_back(p);
    out.to_right.morphism_map.push_back(q);
  }
  out.to_left.audit();
  out.to_right.audit();
  return out;
}

std::optional<GroupoidFunctor> pullback_mediator(const PullbackGroupoid& pb,
                                                 const GroupoidFunctor& to_a,
                                                 const GroupoidFunctor& to_b) {
  if (to_a.dom != to_b.dom && !(*to_a.dom == *to_b.dom)) return std::nullopt;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> obj_index, mor_index;
  for (std::size_t k = 0; k < pb.object_pairs.size(); ++k) obj_index[pb.object_pairs[k]] = k;
  for (std::size_t k = 0; k < pb.morphism_pairs.size(); ++k) mor_index[pb.morphism_pairs[k]] = k;
  GroupoidFunctor med;
  med.dom = to_a.dom;
  med.cod = pb.total;
  for (std::size_t z = 0; z < to_a.dom->num_objects(); ++z) {
    auto it = obj_index.find({to_a.object_map[z], to_b.object_map[z]});
    if (it == obj_index.end()) return std::nullopt;  // cone does not commute over the cospan
    med.object_map.push_back(it->second);
  }
  for (std::size_t z = 0; z < to_a.dom->num_morphisms(); ++z) {
    auto it = mor_index.find({to_a.morphism_map[z], to_b.morphism_map[z]});
    if (it == mor_index.end()) return std::nullopt;
    med.morphism_map.push_back(it->second);
  }
  med.audit();
  return med;
}

std::vector<std::size_t> connected_components(const FiniteGroupoid& x) {
  std::vector<std::size_t> parent(x.num_objects());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t m = 0; m < x.num_morphisms(); ++m) {
    std::size_t a = find(x.src(m)), b = find(x.tgt(m));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> id(x.num_objects(), npos);
  std::size_t next = 0;
  std::vector<std::size_t> out(x.num_objects());
  for (std::size_t o = 0; o < x.num_objects(); ++o) {
    std::size_t r = find(o);
    if (id[r] == npos) id[r] = next++;
    out[o] = id[r];
  }
  return out;
}

Rational groupoid_cardinality(const FiniteGroupoid& x) {
  auto comp = connected_components(x);
  std::size_t count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  Rational total = 0;
  std::vector<bool> seen(count, false);
  for (std::size_t o = 0; o < x.num_objects(); ++o) {
    if (seen[comp[o]]) continue;
    seen[comp[o]] = true;
    total += Rational(1, Int(x.automorphisms(o).size()));
  }
  return total;
}

SkeletonResult skeleton(const FiniteGroupoid& x) {
  auto comp = connected_components(x);
  std::size_t count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  SkeletonResult out;
  out.representative.assign(count, npos);
  for (std::size_t o = 0; o < x.num_objects(); ++o)
    if (out.representative[comp[o]] == npos) out.representative[comp[o]] = o;
  std::vector<std::size_t> obj_of(x.num_objects(), npos);
  for (std::size_t c = 0; c < count; ++c) obj_of[out.representative[c]] = c;

  std::vector<FiniteGroupoid::Morphism> mor;
  std::vector<std::size_t> keep;  // x-morphism ids between representatives
  std::vector<std::size_t> back(x.num_morphisms(), npos);
  for (std::size_t m = 0; m < x.num_morphisms(); ++m)
    if (obj_of[x.src(m)] != npos && obj_of[x.tgt(m)] != npos) {
      back[m] = keep.size();
      keep.push_back(m);
      mor.push_back({obj_of[x.src(m)], obj_of[x.tgt(m)]});
    }
  std::vector<std::size_t> ids(count), inv(keep.size());
  for (std::size_t c = 0; c < count; ++c) ids[c] = back[x.identity(out.representative[c])];
  for (std::size_t k = 0; k < keep.size(); ++k) inv[k] = back[x.inverse(keep[k])];
  out.skeleton = build(count, std::move(mor), std::move(ids), std::move(inv),
                       [&](std::size_t a, std::size_t b) {
                         std::size_t c = x.then(keep[a], keep[b]);
                         return c == npos ? npos : back[c];
                       },
                       "sk(" + x.name() + ")");
  return out;
}

std::optional<GroupoidIso> find_isomorphism(const FiniteGroupoid& x, const FiniteGroupoid& y) {
  if (x.num_objects() != y.num_objects() || x.num_morphisms() != y.num_morphisms())
    return std::nullopt;
  const std::size_t no = x.num_objects();

  auto invariant = [](const FiniteGroupoid& g, std::size_t o) {
    std::vector<std::size_t> homs;
    for (std::size_t p = 0; p < g.num_objects(); ++p) homs.push_back(g.hom(o, p).size());
    std::sort(homs.begin(), homs.end());
    homs.push_back(g.automorphisms(o).size());
    return homs;
  };
  std::vector<std::vector<std::size_t>> ix(no), iy(no);
  for (std::size_t o = 0; o < no; ++o) {
    ix[o] = invariant(x, o);
    iy[o] = invariant(y, o);
  }
  {
    auto sx = ix, sy = iy;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    if (sx != sy) return std::nullopt;
  }

  std::vector<std::size_t> omap(no, npos);
  std::vector<bool> taken(no, false);
  std::optional<GroupoidIso> found;

  std::function<bool(std::size_t)> place = [&](std::size_t o) -> bool {
    if (o == no) {
      Assigner search(x, y, omap, true, [&](const std::vector<std::size_t>& asg) {
        found = GroupoidIso{omap, asg};
        return true;
      });
      return search.run();
    }
    for (std::size_t t = 0; t < no; ++t) {
      if (taken[t] || ix[o] != iy[t]) continue;
      taken[t] = true;
      omap[o] = t;
      if (place(o + 1)) return true;
      taken[t] = false;
      omap[o] = npos;
    }
    return false;
  };
  place(0);
  return found;
}

}  // namespace fgt
