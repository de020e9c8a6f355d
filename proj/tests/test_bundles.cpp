#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "fgt/bundles.hpp"
#include "fgt/errors.hpp"
#include "fgt/group.hpp"
#include "fgt/groupoid.hpp"

using namespace fgt;

namespace {

GroupPtr zmod(std::size_t n) { return std::make_shared<FiniteGroup>(FiniteGroup::cyclic(n)); }

GroupPtr s3() {
  return std::make_shared<FiniteGroup>(
      FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}, "S3"));
}

// Oracle: over BG the section space of rho is the invariant subspace, whose
// dimension is the multiplicity of the trivial character: (1/|G|) sum of
// traces. Computed directly from the matrices.
Cyclotomic trivial_multiplicity(const MatRep& rho) {
  Cyclotomic sum;
  for (const auto& m : rho.mats) sum += m.trace();
  return sum * Cyclotomic(Rational(1, Int(rho.group->order())));
}

// every fiber of a principal bundle: |G| objects, no non-identity morphisms
void check_fibers(const PrincipalBundle& p, const Cocycle& c) {
  const auto& base = *c.map.dom;
  const auto& total = *p.total;
  for (std::size_t x = 0; x < base.num_objects(); ++x) {
    std::size_t fiber_objects = 0;
    for (std::size_t o = 0; o < total.num_objects(); ++o)
      if (p.projection.object_map[o] == x) ++fiber_objects;
    CHECK(fiber_objects == c.group->order());
    for (std::size_t m = 0; m < total.num_morphisms(); ++m)
      if (p.projection.morphism_map[m] == base.identity(x))
        CHECK(total.is_identity(m));
  }
}

// all rank-1 monomial cochains h on the 6 ordered distinct pairs of a 3-open
// cover, phases in (1/2)Z/Z; returns each delta(h) as a 6-slot phase table
// aligned with `triples`
std::vector<std::vector<Phase>> coboundary_image(
    const std::vector<std::array<std::size_t, 2>>& pairs,
    const std::vector<std::array<std::size_t, 3>>& triples) {
  auto pair_index = [&pairs](std::size_t i, std::size_t j) {
    return static_cast<std::size_t>(
        std::find(pairs.begin(), pairs.end(), std::array<std::size_t, 2>{i, j}) - pairs.begin());
  };
  std::vector<std::vector<Phase>> image;
  for (std::size_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<Phase> h(pairs.size());
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask & (1u << b)) h[b] = Phase(1, 2);
    std::vector<Phase> delta;
    for (const auto& t : triples)
      delta.push_back(h[pair_index(t[0], t[1])] + h[pair_index(t[1], t[2])] -
                      h[pair_index(t[0], t[2])]);
    image.push_back(std::move(delta));
  }
  return image;
}

MonomialMatrix random_monomial(std::size_t n, std::size_t denom, std::mt19937& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Phase> phases(n);
  std::uniform_int_distribution<std::size_t> dist(0, denom - 1);
  for (auto& p : phases) p = Phase(Int(dist(rng)), Int(denom));
  return MonomialMatrix(std::move(perm), std::move(phases));
}

}  // namespace

TEST_CASE("principal bundles from cocycles") {
  auto z2 = zmod(2);

  SUBCASE("over a point the bundle is the discrete group") {
    auto c = trivial_cocycle(zmod(3), discrete_groupoid(1));
    auto p = principal_bundle(c);
    CHECK(p.total->num_objects() == 3);
    CHECK(p.total->num_morphisms() == 3);
    for (std::size_t m = 0; m < 3; ++m) CHECK(p.total->is_identity(m));
    check_fibers(p, c);
  }

  SUBCASE("identity cocycle gives the universal bundle") {
    auto c = identity_cocycle(z2);
    auto p = principal_bundle(c);
    CHECK(p.total->num_objects() == 2);
    CHECK(connected_components(*p.total) == std::vector<std::size_t>{0, 0});
    CHECK(find_isomorphism(*p.total, *universal_bundle_total(z2)).has_value());
    check_fibers(p, c);
  }

  SUBCASE("trivial cocycle gives the product bundle") {
    auto c = trivial_cocycle(z2, delooping(z2));
    auto p = principal_bundle(c);
    CHECK(p.total->num_objects() == 2);
    auto comp = connected_components(*p.total);
    CHECK(std::set<std::size_t>(comp.begin(), comp.end()).size() == 2);
    auto product = product_groupoid(*discrete_groupoid(2), *delooping(z2));
    CHECK(find_isomorphism(*p.total, *product).has_value());
    check_fibers(p, c);
  }

  SUBCASE("quotient cocycle of Z/4 over Z/2 is connected") {
    auto z4 = zmod(4);
    GroupoidFunctor f;
    f.dom = delooping(z4);
    f.cod = delooping(z2);
    f.object_map = {0};
    f.morphism_map = {0, 1, 0, 1};
    auto c = make_cocycle(z2, f);
    auto p = principal_bundle(c);
    CHECK(p.total->num_objects() == 2);
    CHECK(connected_components(*p.total) == std::vector<std::size_t>{0, 0});
    check_fibers(p, c);
    // the fiberwise identification with G respects the second projection
    for (std::size_t m = 0; m < p.total->num_morphisms(); ++m)
      CHECK(p.to_universal.morphism_map[m] < universal_bundle_total(z2)->num_morphisms());
  }

  SUBCASE("universal bundle over the symmetric group") {
    auto c = identity_cocycle(s3());
    auto p = principal_bundle(c);
    CHECK(p.total->num_objects() == 6);
    check_fibers(p, c);
  }

  SUBCASE("cocycle validation") {
    GroupoidFunctor f;
    f.dom = discrete_groupoid(1);
    f.cod = discrete_groupoid(2);
    f.object_map = {0};
    f.morphism_map = {0};
    CHECK_THROWS_AS(make_cocycle(z2, f), ValidationError);
  }
}

TEST_CASE("matrix representations") {
  auto z2 = zmod(2);

  SUBCASE("built-ins validate") {
    CHECK(regular_rep(s3()).dim == 6);
    CHECK(trivial_rep(z2, 3).dim == 3);
    CHECK(phase_rep(z2, {Phase(), Phase(1, 2)}).dim == 1);
  }

  SUBCASE("non-multiplicative data is rejected") {
    CycMatrix one = CycMatrix::identity(1);
    CycMatrix minus(1, 1);
    minus.at(0, 0) = Cyclotomic(Rational(-1));
    CHECK_THROWS_AS(make_rep(zmod(3), {one, one, minus}), ValidationError);
    CHECK_THROWS_AS(make_rep(z2, {minus, minus}), ValidationError);
    CHECK_THROWS_AS(make_rep(z2, {CycMatrix::identity(2), CycMatrix(2, 1)}), ValidationError);
    CHECK_THROWS_AS(phase_rep(z2, {Phase(), Phase(1, 3)}), ValidationError);
  }
}

TEST_CASE("associated bundles") {
  auto z2 = zmod(2);

  SUBCASE("trivial representation gives the trivial line bundle") {
    auto c = identity_cocycle(s3());
    auto bundle = associated_bundle(c, trivial_rep(s3()));
    for (auto d : bundle.dims) CHECK(d == 1);
    for (const auto& m : bundle.matrices) CHECK(m == CycMatrix::identity(1));
  }

  SUBCASE("sign representation has holonomy -1 on the generator") {
    auto c = identity_cocycle(z2);
    auto bundle = associated_bundle(c, phase_rep(z2, {Phase(), Phase(1, 2)}));
    CHECK(bundle.matrices[0] == CycMatrix::identity(1));
    CHECK(bundle.matrices[1].at(0, 0) == Cyclotomic(Rational(-1)));
  }

  SUBCASE("regular representation transports by permutation matrices") {
    auto g = s3();
    auto bundle = associated_bundle(identity_cocycle(g), regular_rep(g));
    CHECK(bundle.dims == std::vector<std::size_t>{6});
    for (const auto& m : bundle.matrices) {
      for (std::size_t j = 0; j < 6; ++j) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < 6; ++i) {
          if (m.at(i, j) == Cyclotomic(Rational(1)))
            ++ones;
          else
            CHECK(m.at(i, j).is_zero());
        }
        CHECK(ones == 1);
      }
    }
  }

  SUBCASE("group mismatch throws") {
    CHECK_THROWS_AS(associated_bundle(identity_cocycle(z2), trivial_rep(zmod(3))),
                    PreconditionError);
  }
}

TEST_CASE("section spaces") {
  auto z2 = zmod(2);

  SUBCASE("invariant-subspace dimensions over deloopings") {
    struct Case {
      GroupPtr g;
      MatRep rho;
      std::size_t expect;
    };
    std::vector<Case> cases;
    cases.push_back({z2, trivial_rep(z2), 1});
    cases.push_back({z2, phase_rep(z2, {Phase(), Phase(1, 2)}), 0});
    cases.push_back({z2, regular_rep(z2), 1});
    cases.push_back({s3(), regular_rep(s3()), 1});
    cases.push_back({zmod(3), phase_rep(zmod(3), {Phase(), Phase(1, 3), Phase(2, 3)}), 0});
    for (const auto& kase : cases) {
      auto sec = sections(identity_cocycle(kase.g), kase.rho);
      CHECK(sec.dimension == kase.expect);
      CHECK(Cyclotomic(Rational(Int(sec.dimension))) == trivial_multiplicity(kase.rho));
    }
  }

  SUBCASE("regular sections over the symmetric group are the constants") {
    auto g = s3();
    auto sec = sections(identity_cocycle(g), regular_rep(g));
    REQUIRE(sec.dimension == 1);
    const auto& v = sec.basis[0];
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] == v[0]);
    CHECK_FALSE(v[0].is_zero());
  }

  SUBCASE("dimension is invariant under cover refinement") {
    // equivalent thickened model of BZ/2: pair groupoid times the delooping,
    // with the projection to the group coordinate as classifying map
    auto thick = product_groupoid(*pair_groupoid(2), *delooping(z2));
    GroupoidFunctor proj;
    proj.dom = thick;
    proj.cod = delooping(z2);
    proj.object_map.assign(thick->num_objects(), 0);
    proj.morphism_map.resize(thick->num_morphisms());
    for (std::size_t m = 0; m < thick->num_morphisms(); ++m)
      proj.morphism_map[m] = m % 2;  // product morphisms are (pair part, group part)
    auto refined = make_cocycle(z2, proj);
    auto base = identity_cocycle(z2);
    for (const auto& rho :
         {trivial_rep(z2), phase_rep(z2, {Phase(), Phase(1, 2)}), regular_rep(z2)}) {
      CHECK(sections(refined, rho).dimension == sections(base, rho).dimension);
    }
  }

  SUBCASE("sections see only the image subgroup") {
    // Z/4 classifying map onto Z/2: the sign line is killed, so sections
    // drop to 0; the trivial line keeps its constant
    auto z4 = zmod(4);
    GroupoidFunctor f;
    f.dom = delooping(z4);
    f.cod = delooping(z2);
    f.object_map = {0};
    f.morphism_map = {0, 1, 0, 1};
    auto c = make_cocycle(z2, f);
    CHECK(sections(c, trivial_rep(z2)).dimension == 1);
    CHECK(sections(c, phase_rep(z2, {Phase(), Phase(1, 2)})).dimension == 0);
  }
}

TEST_CASE("monomial matrices") {
  std::mt19937 rng(17);

  SUBCASE("group laws") {
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_monomial(4, 8, rng);
      auto b = random_monomial(4, 8, rng);
      auto c = random_monomial(4, 8, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * a.inverse() == MonomialMatrix::identity(4));
      CHECK(a.inverse() * a == MonomialMatrix::identity(4));
      CHECK(a * MonomialMatrix::identity(4) == a);
      CHECK((a.scaled(Phase(1, 3)) * b) == (a * b).scaled(Phase(1, 3)));
    }
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(MonomialMatrix({0, 0}, {Phase(), Phase()}), ValidationError);
    CHECK_THROWS_AS(MonomialMatrix({0, 2}, {Phase(), Phase()}), ValidationError);
    CHECK_THROWS_AS(MonomialMatrix({0, 1}, {Phase()}), ValidationError);
    CHECK_THROWS_AS(random_monomial(2, 2, rng) * random_monomial(3, 2, rng), ValidationError);
  }
}

TEST_CASE("twisted bundle checker") {
  // nerve of a 3-open cover with every ordered distinct overlap present
  CechCover cover;
  cover.opens = 3;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) cover.pairs.push_back({i, j});
      for (std::size_t k = 0; k < 3; ++k)
        if (i != j && j != k && i != k) cover.triples.push_back({i, j, k});
    }
  std::sort(cover.triples.begin(), cover.triples.end());
  cover.triples.erase(std::unique(cover.triples.begin(), cover.triples.end()),
                      cover.triples.end());
  auto trivial_gerbe = make_gerbe(cover, std::vector<Phase>(cover.triples.size()));
  std::mt19937 rng(23);

  auto bundle_from_opens = [&cover](const std::vector<MonomialMatrix>& per_open) {
    TwistedBundle tw;
    tw.opens = cover.opens;
    for (const auto& p : cover.pairs)
      tw.transitions.insert({p, per_open[p[0]] * per_open[p[1]].inverse()});
    return tw;
  };

  SUBCASE("honest cocycles pass with the trivial gerbe") {
    std::vector<MonomialMatrix> opens;
    for (int i = 0; i < 3; ++i) opens.push_back(random_monomial(3, 4, rng));
    CHECK(check_twisted_bundle(trivial_gerbe, bundle_from_opens(opens)));
  }

  SUBCASE("trivial gerbe reduces to the ordinary cocycle condition") {
    std::size_t agree_true = 0, agree_false = 0;
    for (int trial = 0; trial < 30; ++trial) {
      TwistedBundle tw;
      tw.opens = cover.opens;
      for (const auto& p : cover.pairs) tw.transitions.insert({p, random_monomial(2, 4, rng)});
      bool direct = true;
      for (const auto& t : cover.triples)
        if (!(tw.transitions.at({t[0], t[1]}) * tw.transitions.at({t[1], t[2]}) ==
              tw.transitions.at({t[0], t[2]})))
          direct = false;
      bool got = check_twisted_bundle(trivial_gerbe, tw);
      CHECK(got == direct);
      (got ? agree_true : agree_false)++;
    }
    CHECK(agree_false > 0);  // random data is almost never a cocycle
  }

  SUBCASE("a non-bounding gerbe admits no rank-1 bundle") {
    auto image = coboundary_image(cover.pairs, cover.triples);
    std::vector<Phase> g(cover.triples.size());
    bool found = false;
    std::vector<std::size_t> digits(cover.triples.size(), 0);
    while (!found) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = Phase(Int(digits[i]), 2);
      if (std::find(image.begin(), image.end(), g) == image.end()) {
        found = true;
        break;
      }
      std::size_t pos = 0;
      while (pos < digits.size() && digits[pos] == 1) digits[pos++] = 0;
      REQUIRE(pos < digits.size());
      ++digits[pos];
    }
    auto gerbe = make_gerbe(cover, g);
    // exhaust every rank-1 half-phase bundle
    for (std::size_t mask = 0; mask < (1u << cover.pairs.size()); ++mask) {
      TwistedBundle tw;
      tw.opens = cover.opens;
      for (std::size_t b = 0; b < cover.pairs.size(); ++b)
        tw.transitions.insert(
            {cover.pairs[b], MonomialMatrix({0}, {Phase(Int((mask >> b) & 1), 2)})});
      CHECK_FALSE(check_twisted_bundle(gerbe, tw));
    }
    // sanity: a bounding gerbe does admit one
    auto bounding = make_gerbe(cover, image[5]);
    bool some = false;
    for (std::size_t mask = 0; mask < (1u << cover.pairs.size()) && !some; ++mask) {
      TwistedBundle tw;
      tw.opens = cover.opens;
      for (std::size_t b = 0; b < cover.pairs.size(); ++b)
        tw.transitions.insert(
            {cover.pairs[b], MonomialMatrix({0}, {Phase(Int((mask >> b) & 1), 2)})});
      some = check_twisted_bundle(bounding, tw);
    }
    CHECK(some);
  }

  SUBCASE("gauge transformations preserve the verdict") {
    std::uniform_int_distribution<std::size_t> dist(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
      TwistedBundle tw;
      tw.opens = cover.opens;
      for (const auto& p : cover.pairs) tw.transitions.insert({p, random_monomial(2, 4, rng)});
      std::vector<Phase> g(cover.triples.size());
      for (auto& p : g) p = Phase(Int(dist(rng)), 4);
      auto gerbe = make_gerbe(cover, g);
      // random 1-cochain h, twist the bundle by h and the gerbe by delta(h)
      std::vector<Phase> h(cover.pairs.size());
      for (auto& p : h) p = Phase(Int(dist(rng)), 4);
      auto pair_index = [&](std::size_t i, std::size_t j) {
        return static_cast<std::size_t>(std::find(cover.pairs.begin(), cover.pairs.end(),
                                                  std::array<std::size_t, 2>{i, j}) -
                                        cover.pairs.begin());
      };
      TwistedBundle tw2;
      tw2.opens = cover.opens;
      for (std::size_t b = 0; b < cover.pairs.size(); ++b)
        tw2.transitions.insert(
            {cover.pairs[b], tw.transitions.at(cover.pairs[b]).scaled(h[b])});
      std::vector<Phase> g2(g);
      for (std::size_t t = 0; t < cover.triples.size(); ++t) {
        const auto& tri = cover.triples[t];
        g2[t] = g[t] + h[pair_index(tri[0], tri[1])] + h[pair_index(tri[1], tri[2])] -
                h[pair_index(tri[0], tri[2])];
      }
      CHECK(check_twisted_bundle(gerbe, tw) == check_twisted_bundle(make_gerbe(cover, g2), tw2));
    }
  }

  SUBCASE("shape violations throw") {
    TwistedBundle tw;
    tw.opens = cover.opens;
    CHECK_THROWS_AS(check_twisted_bundle(trivial_gerbe, tw), ValidationError);
    for (const auto& p : cover.pairs)
      tw.transitions.insert({p, MonomialMatrix::identity(p[0] == 0 || p[1] == 0 ? 2 : 3)});
    CHECK_THROWS_AS(check_twisted_bundle(trivial_gerbe, tw), ValidationError);
    TwistedBundle wrong;
    wrong.opens = 4;
    CHECK_THROWS_AS(check_twisted_bundle(trivial_gerbe, wrong), ValidationError);
  }

  SUBCASE("gerbe validation") {
    CechCover bad = cover;
    bad.pairs.erase(bad.pairs.begin());
    CHECK_THROWS_AS(make_gerbe(bad, std::vector<Phase>(bad.triples.size())), ValidationError);
    CHECK_THROWS_AS(make_gerbe(cover, std::vector<Phase>(2)), ValidationError);

    // a 4-open nerve activates the quadruple condition
    CechCover four;
    four.opens = 4;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if (i != j) four.pairs.push_back({i, j});
        for (std::size_t k = 0; k < 4; ++k)
          if (i != j && j != k && i != k) four.triples.push_back({i, j, k});
      }
    std::sort(four.triples.begin(), four.triples.end());
    four.triples.erase(std::unique(four.triples.begin(), four.triples.end()),
                       four.triples.end());
    CHECK_NOTHROW(make_gerbe(four, std::vector<Phase>(four.triples.size())));
    std::vector<Phase> spiked(four.triples.size());
    spiked[0] = Phase(1, 2);
    CHECK_THROWS_AS(make_gerbe(four, spiked), ValidationError);
    // coboundaries always satisfy it
    std::mt19937 rng2(29);
    std::uniform_int_distribution<std::size_t> dist(0, 3);
    std::vector<Phase> h(four.pairs.size());
    for (auto& p : h) p = Phase(Int(dist(rng2)), 4);
    auto pair_index = [&four](std::size_t i, std::size_t j) {
      return static_cast<std::size_t>(std::find(four.pairs.begin(), four.pairs.end(),
                                                std::array<std::size_t, 2>{i, j}) -
                                      four.pairs.begin());
    };
    std::vector<Phase> db;
    for (const auto& t : four.triples)
      db.push_back(h[pair_index(t[0], t[1])] + h[pair_index(t[1], t[2])] -
                   h[pair_index(t[0], t[2])]);
    CHECK_NOTHROW(make_gerbe(four, db));
  }
}
