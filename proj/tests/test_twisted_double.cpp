#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "fgt/cohomology.hpp"
#include "fgt/cyc_matrix.hpp"
#include "fgt/errors.hpp"
#include "fgt/group.hpp"
#include "fgt/twisted_double.hpp"

using namespace fgt;

namespace {

GroupPtr zmod(std::size_t n) { return std::make_shared<FiniteGroup>(FiniteGroup::cyclic(n)); }

GroupPtr s3() {
  return std::make_shared<FiniteGroup>(
      FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}, "S3"));
}

GroupPtr d4() {
  return std::make_shared<FiniteGroup>(
      FiniteGroup::from_permutations({{1, 2, 3, 0}, {3, 2, 1, 0}}, "D4"));
}

GroupPtr z2z2() {
  return std::make_shared<FiniteGroup>(
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
}

// Oracle: the untwisted algebra is the groupoid algebra of G acting on itself
// by conjugation, so its center dimension is the number of orbits of
// commuting pairs (x, g) under simultaneous conjugation.
std::size_t commuting_orbit_count(const GroupPtr& gp) {
  const auto& g = *gp;
  const std::size_t n = g.order();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t orbits = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < n; ++a) {
      if (g.mul(x, a) != g.mul(a, x)) continue;
      if (seen.count({x, a})) continue;
      ++orbits;
      for (std::size_t s = 0; s < n; ++s) seen.insert({g.conj(s, x), g.conj(s, a)});
    }
  return orbits;
}

// Oracle: center dimension as the nullity of the full commutant system
// [z, e_j] = 0, solved densely over cyclotomic numbers.
std::size_t dense_center_dimension(const TwistedLoopAlgebra& alg) {
  const std::size_t dim = alg.dimension();
  const unsigned ord = alg.coefficient_order();
  CycMatrix sys(dim * dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      auto left = alg.basis_product(i, j);
      if (!left.zero)
        sys.at(j * dim + left.index, i) = sys.at(j * dim + left.index, i) + embed(left.phase, ord);
      auto right = alg.basis_product(j, i);
      if (!right.zero)
        sys.at(j * dim + right.index, i) =
            sys.at(j * dim + right.index, i) - embed(right.phase, ord);
    }
  return nullspace(sys).size();
}

GroupCochain first_nontrivial_rep(const GroupPtr& g, const Int& modulus) {
  auto classes = solve_cocycles(g, 3, modulus);
  for (const auto& rep : classes.representatives)
    if (!rep.is_zero()) return rep;
  throw std::runtime_error("no nontrivial class found");
}

LoopOneCochain random_loop_one(const GroupPtr& g, std::size_t denom, std::mt19937& rng) {
  LoopOneCochain lam(g);
  std::uniform_int_distribution<std::size_t> dist(0, denom - 1);
  const std::size_t n = g->order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < n; ++a) lam.set(x, a, Phase(Int(dist(rng)), Int(denom)));
  return lam;
}

GroupCochain random_cochain(const GroupPtr& g, unsigned degree, std::size_t denom,
                            std::mt19937& rng) {
  GroupCochain c(g, degree);
  std::uniform_int_distribution<std::size_t> dist(0, denom - 1);
  for (std::size_t i = 0; i < c.size(); ++i) c.set_index(i, Phase(Int(dist(rng)), Int(denom)));
  return c;
}

std::vector<Cyclotomic> basis_vector(std::size_t dim, std::size_t i) {
  std::vector<Cyclotomic> v(dim);
  v[i] = Cyclotomic(Rational(1));
  return v;
}

bool all_zero(const std::vector<Cyclotomic>& v) {
  return std::all_of(v.begin(), v.end(), [](const Cyclotomic& c) { return c.is_zero(); });
}

}  // namespace

TEST_CASE("transgression yields normalized loop two-cocycles") {
  auto z2 = zmod(2);
  auto a1 = cyclic_three_cocycle(z2, 1);
  auto t = transgress(a1);

  SUBCASE("pinned value on Z/2") { CHECK(t.at(1, 1, 1) == Phase(1, 2)); }

  SUBCASE("zero transgresses to zero") {
    GroupCochain zero(z2, 3);
    CHECK(transgress(zero).is_zero());
  }

  SUBCASE("cyclic generators for n = 2..6") {
    for (std::size_t n = 2; n <= 6; ++n) {
      auto g = zmod(n);
      for (std::size_t p = 0; p < n; ++p) {
        auto tw = transgress(cyclic_three_cocycle(g, Int(p)));
        CHECK(tw.normalized());
        CHECK(is_loop_two_cocycle(tw));
      }
    }
  }

  SUBCASE("class representatives for nonabelian and noncyclic groups") {
    for (const auto& g : {z2z2(), s3()}) {
      Int m = Int(g->order()) * Int(g->order());
      auto classes = solve_cocycles(g, 3, m);
      for (const auto& rep : classes.representatives) {
        auto tw = transgress(rep);
        CHECK(tw.normalized());
        CHECK(is_loop_two_cocycle(tw));
      }
    }
  }

  SUBCASE("abelian groups reduce to the three-term shuffle") {
    for (const auto& g : {zmod(4), z2z2()}) {
      Int m = Int(g->order()) * Int(g->order());
      auto classes = solve_cocycles(g, 3, m);
      for (const auto& rep : classes.representatives) {
        auto tw = transgress(rep);
        const std::size_t n = g->order();
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
              CHECK(tw.at(x, a, b) ==
                    rep.at({x, a, b}) + rep.at({a, b, x}) - rep.at({a, x, b}));
      }
    }
  }

  SUBCASE("rejects non-cocycles") {
    GroupCochain bad(zmod(3), 3);
    bad.set({1, 1, 1}, Phase(1, 3));
    REQUIRE_FALSE(is_three_cocycle(bad));
    CHECK_THROWS_AS(transgress(bad), PreconditionError);
  }
}

TEST_CASE("transgression sends coboundaries to loop coboundaries") {
  auto z2 = zmod(2);

  SUBCASE("exhaustive over Z/2 two-cochains at denominator 4") {
    // all 4^4 two-cochains beta; transgress(d beta) must bound at the same
    // modulus, and the recovered witness must reproduce it exactly
    std::vector<std::size_t> digits(4, 0);
    while (true) {
      GroupCochain beta(z2, 2);
      for (std::size_t i = 0; i < 4; ++i) beta.set_index(i, Phase(Int(digits[i]), 4));
      auto tw = transgress(differential(beta));
      auto lam = loop_coboundary_witness(tw, 4);
      REQUIRE(lam.has_value());
      CHECK(loop_coboundary(*lam) == tw);
      std::size_t pos = 0;
      while (pos < 4 && digits[pos] == 3) digits[pos++] = 0;
      if (pos == 4) break;
      ++digits[pos];
    }
  }

  SUBCASE("shifting a cocycle by a coboundary shifts the loop class by zero") {
    std::mt19937 rng(2026);
    auto z3 = zmod(3);
    auto a1 = cyclic_three_cocycle(z3, 1);
    for (int trial = 0; trial < 20; ++trial) {
      auto beta = random_cochain(z3, 2, 9, rng);
      auto shifted = a1 + differential(beta);
      REQUIRE(is_three_cocycle(shifted));
      auto diff = transgress(shifted) - transgress(a1);
      auto lam = loop_coboundary_witness(diff, 9);
      REQUIRE(lam.has_value());
      CHECK(loop_coboundary(*lam) == diff);
    }
  }

  SUBCASE("the nontrivial Z/2 class bounds at 4 but not at 2") {
    auto tw = transgress(cyclic_three_cocycle(z2, 1));
    CHECK_FALSE(loop_coboundary_witness(tw, 2).has_value());
    auto lam = loop_coboundary_witness(tw, 4);
    REQUIRE(lam.has_value());
    CHECK(loop_coboundary(*lam) == tw);
  }
}

TEST_CASE("loop coboundaries are loop cocycles and witnesses invert") {
  std::mt19937 rng(7);
  for (const auto& g : {zmod(4), s3()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto lam = random_loop_one(g, 8, rng);
      auto d = loop_coboundary(lam);
      CHECK(is_loop_two_cocycle(d));
      auto back = loop_coboundary_witness(d, 8);
      REQUIRE(back.has_value());
      CHECK(loop_coboundary(*back) == d);
    }
  }
}

TEST_CASE("twisted loop algebra multiplication") {
  auto z2 = zmod(2);
  LoopTwoCochain zero2(z2);
  TwistedLoopAlgebra plain(z2, zero2);
  auto semion_twist = transgress(cyclic_three_cocycle(z2, 1));
  TwistedLoopAlgebra twisted(z2, semion_twist);

  SUBCASE("untwisted square of the nontrivial loop") {
    auto t = plain.basis_product(plain.basis_index(1, 1), plain.basis_index(1, 1));
    REQUIRE_FALSE(t.zero);
    CHECK(t.index == plain.basis_index(1, 0));
    CHECK(t.phase.is_zero());
  }

  SUBCASE("twisted square picks up the sign") {
    std::size_t i = twisted.basis_index(1, 1);
    auto t = twisted.basis_product(i, i);
    REQUIRE_FALSE(t.zero);
    CHECK(t.index == twisted.basis_index(1, 0));
    CHECK(t.phase == Phase(1, 2));
    auto prod = twisted.multiply(basis_vector(4, i), basis_vector(4, i));
    CHECK(prod[twisted.basis_index(1, 0)] == Cyclotomic(Rational(-1)));
    CHECK(prod[i].is_zero());
  }

  SUBCASE("non-composable pairs vanish") {
    auto g = s3();
    LoopTwoCochain zero6(g);
    TwistedLoopAlgebra alg(g, zero6);
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < alg.dimension(); ++i)
      for (std::size_t j = 0; j < alg.dimension(); ++j) {
        auto [x, a] = alg.basis_label(i);
        auto [y, b] = alg.basis_label(j);
        auto t = alg.basis_product(i, j);
        CHECK(t.zero == (y != g->conj(a, x)));
        if (t.zero) {
          ++zeros;
          CHECK(all_zero(
              alg.multiply(basis_vector(alg.dimension(), i), basis_vector(alg.dimension(), j))));
        }
      }
    CHECK(zeros > 0);
  }

  SUBCASE("unit law") {
    std::mt19937 rng(11);
    auto z3 = zmod(3);
    TwistedLoopAlgebra alg(z3, transgress(cyclic_three_cocycle(z3, 1)));
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Cyclotomic> v(alg.dimension());
      for (auto& c : v) c = Cyclotomic(Rational(dist(rng))) + embed(Phase(dist(rng) & 3, 9), 9);
      CHECK(alg.multiply(alg.unit(), v) == v);
      CHECK(alg.multiply(v, alg.unit()) == v);
    }
  }

  SUBCASE("rejects unnormalized twists and mismatched groups") {
    LoopTwoCochain bad(z2);
    bad.set(1, 0, 1, Phase(1, 2));
    CHECK_FALSE(bad.normalized());
    CHECK_THROWS_AS(TwistedLoopAlgebra(z2, bad), PreconditionError);
    LoopTwoCochain other(zmod(3));
    CHECK_THROWS_AS(TwistedLoopAlgebra(z2, other), PreconditionError);
    CHECK_THROWS_AS(plain.multiply({}, {}), PreconditionError);
  }
}

TEST_CASE("associativity holds exactly for cocycle twists") {
  SUBCASE("transgressed twists are associative") {
    for (const auto& g : {zmod(2), zmod(3), zmod(4), z2z2(), s3()}) {
      Int m = Int(g->order()) * Int(g->order());
      auto classes = solve_cocycles(g, 3, m);
      for (const auto& rep : classes.representatives) {
        TwistedLoopAlgebra alg(g, transgress(rep));
        CHECK(check_associativity(alg));
      }
    }
  }

  SUBCASE("associativity is equivalent to the loop cocycle condition") {
    std::mt19937 rng(13);
    std::size_t broken = 0;
    for (const auto& g : {zmod(2), zmod(3), s3()}) {
      const std::size_t n = g->order();
      std::uniform_int_distribution<std::size_t> el(1, n - 1);
      std::uniform_int_distribution<std::size_t> any(0, n - 1);
      auto base = transgress(cyclic_three_cocycle(zmod(n), 1));
      for (int trial = 0; trial < 8; ++trial) {
        LoopTwoCochain tw(g);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) tw.set(x, a, b, base.at(x % 2, a % 2, b % 2));
        tw.set(any(rng), el(rng), el(rng), Phase(1 + (trial % 2), 3));
        if (!tw.normalized()) continue;
        TwistedLoopAlgebra alg(g, tw);
        bool assoc = check_associativity(alg);
        CHECK(assoc == is_loop_two_cocycle(tw));
        if (!assoc) ++broken;
      }
    }
    CHECK(broken > 0);
  }
}

TEST_CASE("center dimension") {
  SUBCASE("untwisted centers match the commuting-orbit count") {
    for (const auto& g : {zmod(2), zmod(3), zmod(4), z2z2(), s3(), d4()}) {
      TwistedLoopAlgebra alg(g, LoopTwoCochain(g));
      CHECK(center_dimension(alg) == commuting_orbit_count(g));
    }
    CHECK(commuting_orbit_count(zmod(2)) == 4);
    CHECK(commuting_orbit_count(z2z2()) == 16);
    CHECK(commuting_orbit_count(s3()) == 8);
    CHECK(commuting_orbit_count(d4()) == 22);
  }

  SUBCASE("dense nullspace cross-check, untwisted and twisted") {
    auto z2 = zmod(2);
    auto z3 = zmod(3);
    std::vector<TwistedLoopAlgebra> algebras;
    algebras.emplace_back(z2, LoopTwoCochain(z2));
    algebras.emplace_back(z3, LoopTwoCochain(z3));
    algebras.emplace_back(z2, transgress(cyclic_three_cocycle(z2, 1)));
    algebras.emplace_back(z3, transgress(cyclic_three_cocycle(z3, 1)));
    auto g6 = s3();
    algebras.emplace_back(g6, transgress(first_nontrivial_rep(g6, 6)));
    for (const auto& alg : algebras)
      CHECK(center_dimension(alg) == dense_center_dimension(alg));
  }

  SUBCASE("twisting a cyclic double keeps the simple count") {
    // H^2 of a cyclic group vanishes, so each conjugation sector of the
    // twisted algebra is a retwisted group algebra isomorphic to the plain
    // one; the center dimension stays |G|^2
    for (std::size_t n : {2, 3, 4}) {
      auto g = zmod(n);
      TwistedLoopAlgebra alg(g, transgress(cyclic_three_cocycle(g, 1)));
      CHECK(center_dimension(alg) == n * n);
    }
  }

  SUBCASE("requires associativity") {
    auto z3 = zmod(3);
    LoopTwoCochain tw(z3);
    tw.set(0, 1, 1, Phase(1, 3));
    TwistedLoopAlgebra alg(z3, tw);
    REQUIRE_FALSE(check_associativity(alg));
    CHECK_THROWS_AS(center_dimension(alg), PreconditionError);
  }
}

TEST_CASE("bundle composition law") {
  auto z2 = zmod(2);
  LoopTwoCochain zero2(z2);
  auto semion_twist = transgress(cyclic_three_cocycle(z2, 1));

  SUBCASE("unit bundle is a rep") { CHECK(is_twisted_rep(unit_rep(z2), zero2)); }

  SUBCASE("sign character at the loop passes untwisted, fails twisted") {
    auto sign = character_rep(z2, 1, {Phase(), Phase(1, 2)});
    CHECK(is_twisted_rep(sign, zero2));
    CHECK_FALSE(is_twisted_rep(sign, semion_twist));
    auto triv = character_rep(z2, 1, {Phase(), Phase()});
    CHECK(is_twisted_rep(triv, zero2));
    CHECK_FALSE(is_twisted_rep(triv, semion_twist));
  }

  SUBCASE("quarter phases solve the twisted law at the loop") {
    // 2 chi(1) = w(1;1,1) = 1/2 forces chi(1) in {1/4, 3/4}: these are
    // exactly the one-dimensional twisted bundles at x = 1
    for (Int num : {1, 3}) {
      auto semion = character_rep(z2, 1, {Phase(), Phase(num, 4)});
      CHECK(is_twisted_rep(semion, semion_twist));
      CHECK_FALSE(is_twisted_rep(semion, zero2));
    }
  }

  SUBCASE("support must be central") {
    auto g = s3();
    std::size_t moved = 0;
    while (g->conj(1, moved) == moved) ++moved;
    CHECK_THROWS_AS(character_rep(g, moved, std::vector<Phase>(6)), PreconditionError);
  }

  SUBCASE("shape violations throw") {
    auto sigma = unit_rep(z2);
    sigma.dims.pop_back();
    CHECK_THROWS_AS(is_twisted_rep(sigma, zero2), PreconditionError);
    auto sigma2 = unit_rep(z2);
    sigma2.matrices[0] = CycMatrix(2, 2);
    CHECK_THROWS_AS(is_twisted_rep(sigma2, zero2), PreconditionError);
    CHECK_THROWS_AS(is_twisted_rep(unit_rep(z2), LoopTwoCochain(zmod(3))), PreconditionError);
  }
}

TEST_CASE("fusion of untwisted bundles") {
  auto z2 = zmod(2);
  auto z3 = zmod(3);
  LoopTwoCochain zero2(z2);

  auto character = [](const GroupPtr& g, std::size_t x, std::size_t k) {
    const std::size_t n = g->order();
    std::vector<Phase> chi(n);
    for (std::size_t a = 0; a < n; ++a) chi[a] = Phase(Int(a * k), Int(n));
    return character_rep(g, x, chi);
  };

  SUBCASE("unit object acts as identity") {
    auto sigma = character(z3, 1, 2);
    for (const auto& fused : {fuse(unit_rep(z3), sigma), fuse(sigma, unit_rep(z3))}) {
      CHECK(fused.dims == sigma.dims);
      REQUIRE(fused.matrices.size() == sigma.matrices.size());
      for (std::size_t i = 0; i < fused.matrices.size(); ++i)
        CHECK(fused.matrices[i] == sigma.matrices[i]);
    }
  }

  SUBCASE("abelian characters convolve") {
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t y = 0; y < 2; ++y)
          for (std::size_t l = 0; l < 2; ++l) {
            auto fused = fuse(character(z2, x, k), character(z2, y, l));
            CHECK(is_twisted_rep(fused, zero2));
            auto expect = character(z2, (x + y) % 2, (k + l) % 2);
            CHECK(rep_character(fused) == rep_character(expect));
          }
  }

  SUBCASE("character-level associativity over Z/3") {
    auto a = character(z3, 1, 1);
    auto b = character(z3, 2, 2);
    auto c = character(z3, 1, 0);
    CHECK(rep_character(fuse(fuse(a, b), c)) == rep_character(fuse(a, fuse(b, c))));
  }

  SUBCASE("dimensions and characters multiply for identity-supported reps") {
    LoopRep reg;
    reg.group = z2;
    reg.dims = {2, 0};
    reg.matrices.assign(4, CycMatrix(0, 0));
    reg.matrices[0] = CycMatrix::identity(2);
    CycMatrix swap(2, 2);
    swap.at(0, 1) = Cyclotomic(Rational(1));
    swap.at(1, 0) = Cyclotomic(Rational(1));
    reg.matrices[1] = swap;
    REQUIRE(is_twisted_rep(reg, zero2));
    auto sq = fuse(reg, reg);
    CHECK(sq.dims == std::vector<std::size_t>{4, 0});
    CHECK(is_twisted_rep(sq, zero2));
    auto chi = rep_character(reg);
    auto chi_sq = rep_character(sq);
    for (std::size_t i = 0; i < chi.size(); ++i) CHECK(chi_sq[i] == chi[i] * chi[i]);
  }

  SUBCASE("the four simple characters sum to the regular character") {
    std::vector<Cyclotomic> total(4);
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t k = 0; k < 2; ++k) {
        auto chi = rep_character(character(z2, x, k));
        for (std::size_t i = 0; i < 4; ++i) total[i] += chi[i];
      }
    TwistedLoopAlgebra plain(z2, zero2);
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t a = 0; a < 2; ++a) {
        Cyclotomic want = a == 0 ? Cyclotomic(Rational(2)) : Cyclotomic();
        CHECK(total[plain.basis_index(x, a)] == want);
      }
  }

  SUBCASE("twisted inputs are rejected") {
    auto semion = character_rep(z2, 1, {Phase(), Phase(1, 4)});
    CHECK_THROWS_AS(fuse(semion, unit_rep(z2)), PreconditionError);
    CHECK_THROWS_AS(fuse(unit_rep(z2), unit_rep(z3)), PreconditionError);
  }
}
