#include "fgt/bundles.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fgt/errors.hpp"

namespace fgt {

namespace {

std::string triple_name(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

Cocycle make_cocycle(GroupPtr group, GroupoidFunctor map) {
  if (!group) throw PreconditionError("cocycle needs a group");
  map.audit();
  if (!(*map.cod == *delooping(group)))
    throw ValidationError("cocycle codomain is not the delooping of the group");
  return {std::move(group), std::move(map)};
}

Cocycle trivial_cocycle(const GroupPtr& group, const GroupoidPtr& base) {
  GroupoidFunctor f;
  f.dom = base;
  f.cod = delooping(group);
  f.object_map.assign(base->num_objects(), 0);
  f.morphism_map.assign(base->num_morphisms(), group->identity());
  return make_cocycle(group, std::move(f));
}

Cocycle identity_cocycle(const GroupPtr& group) {
  GroupoidFunctor f;
  f.dom = f.cod = delooping(group);
  f.object_map = {0};
  f.morphism_map.resize(group->order());
  for (std::size_t i = 0; i < f.morphism_map.size(); ++i) f.morphism_map[i] = i;
  return make_cocycle(group, std::move(f));
}

MatRep make_rep(GroupPtr group, std::vector<CycMatrix> mats) {
  if (!group) throw PreconditionError("representation needs a group");
  const std::size_t n = group->order();
  if (mats.size() != n) throw ValidationError("representation needs one matrix per element");
  const std::size_t dim = mats[group->identity()].rows();
  for (std::size_t g = 0; g < n; ++g)
    if (mats[g].rows() != dim || mats[g].cols() != dim)
      throw ValidationError("representation matrix " + std::to_string(g) + " is not " +
                            std::to_string(dim) + "x" + std::to_string(dim));
  if (!(mats[group->identity()] == CycMatrix::identity(dim)))
    throw ValidationError("representation does not send the identity to the identity matrix");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!(mats[group->mul(a, b)] == mats[a] * mats[b]))
        throw ValidationError("representation is not multiplicative at (" + std::to_string(a) +
                              "," + std::to_string(b) + ")");
  return {std::move(group), dim, std::move(mats)};
}

MatRep trivial_rep(const GroupPtr& group, std::size_t dim) {
  std::vector<CycMatrix> mats(group->order(), CycMatrix::identity(dim));
  return {group, dim, std::move(mats)};
}

MatRep regular_rep(const GroupPtr& group) {
  const std::size_t n = group->order();
  std::vector<CycMatrix> mats(n, CycMatrix(n, n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < n; ++j) mats[g].at(group->mul(g, j), j) = Cyclotomic(Rational(1));
  return make_rep(group, std::move(mats));
}

MatRep phase_rep(const GroupPtr& group, const std::vector<Phase>& chi) {
  if (chi.size() != group->order())
    throw ValidationError("character needs one phase per element");
  std::vector<CycMatrix> mats;
  mats.reserve(chi.size());
  for (const Phase& p : chi) {
    CycMatrix m(1, 1);
    m.at(0, 0) = embed(p);
    mats.push_back(std::move(m));
  }
  return make_rep(group, std::move(mats));
}

PrincipalBundle principal_bundle(const Cocycle& c) {
  auto ub = universal_bundle(c.group);
  auto pb = pullback(c.map, ub.projection);
  return {pb.total, pb.to_left, pb.to_right, pb.object_pairs};
}

AssociatedBundle associated_bundle(const Cocycle& c, const MatRep& rho) {
  if (!(*rho.group == *c.group))
    throw PreconditionError("representation group differs from the cocycle group");
  const auto& base = *c.map.dom;
  AssociatedBundle out;
  out.base = c.map.dom;
  out.dims.assign(base.num_objects(), rho.dim);
  out.matrices.reserve(base.num_morphisms());
  for (std::size_t m = 0; m < base.num_morphisms(); ++m)
    out.matrices.push_back(rho.mats[c.map.morphism_map[m]]);
  return out;
}

SectionSpace sections(const Cocycle& c, const MatRep& rho) {
  auto bundle = associated_bundle(c, rho);
  const auto& base = *c.map.dom;
  const std::size_t d = rho.dim;
  CycMatrix sys(base.num_morphisms() * d, base.num_objects() * d);
  for (std::size_t m = 0; m < base.num_morphisms(); ++m) {
    const auto& mat = bundle.matrices[m];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j)
        sys.at(m * d + i, base.src(m) * d + j) = mat.at(i, j);
      sys.at(m * d + i, base.tgt(m) * d + i) =
          sys.at(m * d + i, base.tgt(m) * d + i) - Cyclotomic(Rational(1));
    }
  }
  SectionSpace out;
  out.basis = nullspace(sys);
  out.dimension = out.basis.size();
  return out;
}

MonomialMatrix::MonomialMatrix(std::vector<std::size_t> perm, std::vector<Phase> phases)
    : perm_(std::move(perm)), phases_(std::move(phases)) {
  if (perm_.size() != phases_.size())
    throw ValidationError("monomial matrix needs one phase per column");
  std::vector<bool> hit(perm_.size(), false);
  for (std::size_t r : perm_) {
    if (r >= perm_.size() || hit[r])
      throw ValidationError("monomial matrix rows are not a permutation");
    hit[r] = true;
  }
}

MonomialMatrix MonomialMatrix::identity(std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  return MonomialMatrix(std::move(perm), std::vector<Phase>(n));
}

MonomialMatrix MonomialMatrix::operator*(const MonomialMatrix& rhs) const {
  if (size() != rhs.size()) throw ValidationError("monomial matrix size mismatch");
  std::vector<std::size_t> perm(size());
  std::vector<Phase> phases(size());
  for (std::size_t j = 0; j < size(); ++j) {
    perm[j] = perm_[rhs.perm_[j]];
    phases[j] = rhs.phases_[j] + phases_[rhs.perm_[j]];
  }
  return MonomialMatrix(std::move(perm), std::move(phases));
}

MonomialMatrix MonomialMatrix::scaled(const Phase& p) const {
  std::vector<Phase> phases(phases_);
  for (Phase& q : phases) q = q + p;
  return MonomialMatrix(perm_, std::move(phases));
}

MonomialMatrix MonomialMatrix::inverse() const {
  std::vector<std::size_t> perm(size());
  std::vector<Phase> phases(size());
  for (std::size_t j = 0; j < size(); ++j) {
    perm[perm_[j]] = j;
    phases[perm_[j]] = -phases_[j];
  }
  return MonomialMatrix(std::move(perm), std::move(phases));
}

Phase CechGerbe::at(std::size_t i, std::size_t j, std::size_t k) const {
  for (std::size_t t = 0; t < cover.triples.size(); ++t)
    if (cover.triples[t] == std::array<std::size_t, 3>{i, j, k}) return phases[t];
  throw ValidationError("gerbe has no phase for triple " + triple_name(i, j, k));
}

CechGerbe make_gerbe(CechCover cover, std::vector<Phase> phases) {
  if (phases.size() != cover.triples.size())
    throw ValidationError("gerbe needs one phase per triple overlap");
  auto has_pair = [&cover](std::size_t i, std::size_t j) {
    return std::find(cover.pairs.begin(), cover.pairs.end(),
                     std::array<std::size_t, 2>{i, j}) != cover.pairs.end();
  };
  for (const auto& p : cover.pairs)
    if (p[0] >= cover.opens || p[1] >= cover.opens)
      throw ValidationError("pair overlap index out of range");
  std::set<std::array<std::size_t, 3>> seen;
  for (const auto& t : cover.triples) {
    if (t[0] >= cover.opens || t[1] >= cover.opens || t[2] >= cover.opens)
      throw ValidationError("triple overlap index out of range");
    if (!seen.insert(t).second)
      throw ValidationError("duplicate triple " + triple_name(t[0], t[1], t[2]));
    if (!has_pair(t[0], t[1]) || !has_pair(t[1], t[2]) || !has_pair(t[0], t[2]))
      throw ValidationError("triple " + triple_name(t[0], t[1], t[2]) +
                            " has a face missing from the nerve");
  }
  if (cover.opens > 31) throw SizeGuardError("cover too large for the quadruple scan");
  CechGerbe out{std::move(cover), std::move(phases)};
  const auto& tris = out.cover.triples;
  auto has = [&tris](std::size_t a, std::size_t b, std::size_t c) {
    return std::find(tris.begin(), tris.end(), std::array<std::size_t, 3>{a, b, c}) != tris.end();
  };
  for (std::size_t i = 0; i < out.cover.opens; ++i)
    for (std::size_t j = 0; j < out.cover.opens; ++j)
      for (std::size_t k = 0; k < out.cover.opens; ++k)
        for (std::size_t l = 0; l < out.cover.opens; ++l) {
          if (!has(j, k, l) || !has(i, k, l) || !has(i, j, l) || !has(i, j, k)) continue;
          Phase sum = out.at(j, k, l) - out.at(i, k, l) + out.at(i, j, l) - out.at(i, j, k);
          if (!sum.is_zero())
            throw ValidationError("gerbe fails the cocycle condition on quadruple (" +
                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                  std::to_string(k) + "," + std::to_string(l) + ")");
        }
  return out;
}

bool check_twisted_bundle(const CechGerbe& gerbe, const TwistedBundle& tw) {
  if (tw.opens != gerbe.cover.opens)
    throw ValidationError("cover sizes of the gerbe and the bundle differ");
  auto transition = [&tw](std::size_t i, std::size_t j) -> const MonomialMatrix& {
    auto it = tw.transitions.find({i, j});
    if (it == tw.transitions.end())
      throw ValidationError("missing transition for pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
    return it->second;
  };
  bool ok = true;
  for (std::size_t t = 0; t < gerbe.cover.triples.size(); ++t) {
    const auto& tri = gerbe.cover.triples[t];
    const auto& tij = transition(tri[0], tri[1]);
    const auto& tjk = transition(tri[1], tri[2]);
    const auto& tik = transition(tri[0], tri[2]);
    if (tij.size() != tjk.size() || tjk.size() != tik.size())
      throw ValidationError("rank mismatch on triple " + triple_name(tri[0], tri[1], tri[2]));
    if (!(tij * tjk == tik.scaled(gerbe.phases[t]))) ok = false;
  }
  return ok;
}

}  // namespace fgt
