#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "fgt/cohomology.hpp"
#include "fgt/errors.hpp"
#include "fgt/group.hpp"

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

// Oracle: order and exponent of G/[G,G], computed from first principles.
std::pair<std::size_t, std::size_t> abelianization_oracle(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::set<std::size_t> comm{g.identity()};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      comm.insert(g.mul(g.mul(g.mul(a, b), g.inv(a)), g.inv(b)));
  // close under multiplication
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> now(comm.begin(), comm.end());
    for (std::size_t a : now)
      for (std::size_t b : now) grew |= comm.insert(g.mul(a, b)).second;
  }
  const std::size_t order = n / comm.size();
  // exponent of the quotient: smallest k with x^k in [G,G] for all x
  std::size_t exponent = 1;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t k = 1, p = x;
    while (comm.find(p) == comm.end()) {
      p = g.mul(p, x);
      ++k;
    }
    exponent = std::lcm(exponent, k);
  }
  return {order, exponent};
}

GroupCochain random_cochain(const GroupPtr& g, unsigned degree, std::size_t denom,
                            std::mt19937& rng) {
  GroupCochain c(g, degree);
  std::uniform_int_distribution<std::size_t> dist(0, denom - 1);
  for (std::size_t i = 0; i < c.size(); ++i) c.set_index(i, Phase(Int(dist(rng)), Int(denom)));
  return c;
}

// Oracle: exhaustive count of normalized degree-3 cocycles valued in (1/m)Z/Z,
// checking d(alpha) = 0 directly. Only for tiny groups.
std::size_t exhaustive_cocycle_count(const GroupPtr& g, std::size_t m) {
  const std::size_t n = g->order();
  std::vector<std::vector<std::size_t>> tuples;
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = 1; b < n; ++b)
      for (std::size_t c = 1; c < n; ++c) tuples.push_back({a, b, c});
  std::vector<std::size_t> choice(tuples.size(), 0);
  std::size_t count = 0;
  while (true) {
    GroupCochain alpha(g, 3);
    for (std::size_t i = 0; i < tuples.size(); ++i)
      alpha.set(tuples[i], Phase(Int(choice[i]), Int(m)));
    if (differential(alpha).is_zero()) ++count;
    std::size_t pos = choice.size();
    bool rolled = true;
    while (pos > 0) {
      --pos;
      if (++choice[pos] < m) {
        rolled = false;
        break;
      }
      choice[pos] = 0;
    }
    if (rolled) break;
  }
  return count;
}

}  // namespace

TEST_CASE("bar differential basics and d^2 = 0") {
  std::mt19937 rng(2024);
  auto groups = {zmod(1), zmod(2), zmod(3), zmod(4), z2z2()};

  for (const auto& g : groups) {
    GroupCochain c0(g, 0);
    c0.set({}, Phase(Int(1), Int(3)));
    CHECK(differential(c0).is_zero());
    for (unsigned deg = 1; deg <= 3; ++deg) {
      for (int trial = 0; trial < 4; ++trial) {
        auto c = random_cochain(g, deg, 8, rng);
        CHECK(differential(differential(c)).is_zero());
      }
    }
  }

  auto g2 = zmod(2);
  GroupCochain beta(g2, 2);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) beta.set({a, b}, Phase(Int(a * b), Int(2)));
  CHECK(differential(beta).at({1, 1, 1}).is_zero());
}

TEST_CASE("degree-3 cocycle identity agrees with the differential") {
  std::mt19937 rng(77);
  for (const auto& g : {zmod(2), zmod(3), zmod(4), z2z2()}) {
    GroupCochain zero(g, 3);
    CHECK(is_three_cocycle(zero));
    for (int trial = 0; trial < 20; ++trial) {
      auto alpha = random_cochain(g, 3, 6, rng);
      CHECK(is_three_cocycle(alpha) == differential(alpha).is_zero());
      auto cob = differential(random_cochain(g, 2, 6, rng));
      CHECK(is_three_cocycle(cob));
    }
  }
}

TEST_CASE("cyclic three-cocycles") {
  auto a1 = cyclic_three_cocycle(2, 1);
  CHECK(a1.at({1, 1, 1}) == Phase(Int(1), Int(2)));
  CHECK(a1.normalized());
  CHECK(is_three_cocycle(a1));

  // matches the sparse description: 1/2 at (1,1,1), zero elsewhere
  GroupCochain sparse(zmod(2), 3);
  sparse.set({1, 1, 1}, Phase(Int(1), Int(2)));
  CHECK(is_three_cocycle(sparse));
  CHECK(sparse == a1);

  CHECK(cyclic_three_cocycle(2, 0).is_zero());
  CHECK(cyclic_three_cocycle(3, 1).at({1, 2, 2}) == Phase(Int(1), Int(3)));

  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t p = 0; p < n; ++p) {
      auto a = cyclic_three_cocycle(n, Int(p));
      CHECK(is_three_cocycle(a));
      CHECK(differential(a).is_zero());
      CHECK(a.normalized());
    }

  CHECK_THROWS_AS(cyclic_three_cocycle(3, 3), PreconditionError);
  CHECK_THROWS_AS(cyclic_three_cocycle(s3(), 1), PreconditionError);

  // distinct parameters give distinct classes at modulus n^2
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < p; ++q) {
        auto diff = cyclic_three_cocycle(n, Int(p)) - cyclic_three_cocycle(n, Int(q));
        CHECK_FALSE(is_coboundary(diff, Int(n * n)).has_value());
      }
}

TEST_CASE("coboundary witnesses") {
  std::mt19937 rng(5150);
  for (const auto& g : {zmod(2), zmod(3), z2z2(), s3()}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto beta0 = random_cochain(g, 2, 8, rng);
      auto alpha = differential(beta0);
      auto witness = is_coboundary(alpha, Int(8));
      REQUIRE(witness.has_value());
      CHECK(differential(*witness) == alpha);
    }
    GroupCochain zero(g, 3);
    auto wz = is_coboundary(zero, Int(4));
    REQUIRE(wz.has_value());
    CHECK(wz->is_zero());
  }

  // the generator of the Z/2 classes is not a coboundary at modulus 4:
  // exhaustive search over every 2-cochain valued in (1/4)Z/Z agrees
  auto g2 = zmod(2);
  auto target = cyclic_three_cocycle(2, 1);
  bool any = false;
  for (std::size_t v = 0; v < 256 && !any; ++v) {
    GroupCochain beta(g2, 2);
    beta.set({0, 0}, Phase(Int(v % 4), Int(4)));
    beta.set({0, 1}, Phase(Int(v / 4 % 4), Int(4)));
    beta.set({1, 0}, Phase(Int(v / 16 % 4), Int(4)));
    beta.set({1, 1}, Phase(Int(v / 64 % 4), Int(4)));
    any = differential(beta) == target;
  }
  CHECK_FALSE(any);
  CHECK_FALSE(is_coboundary(target, Int(4)).has_value());

  // value outside the lattice is a precondition error
  GroupCochain third(g2, 3);
  third.set({1, 1, 1}, Phase(Int(1), Int(3)));
  CHECK_THROWS_AS(is_coboundary(third, Int(4)), PreconditionError);
}

TEST_CASE("group homology via the normalized bar complex") {
  CHECK(group_homology(*zmod(2), 3) == std::vector<Int>{2});
  CHECK(group_homology(*zmod(3), 3) == std::vector<Int>{3});
  CHECK(group_homology(*zmod(4), 3) == std::vector<Int>{4});
  CHECK(group_homology(*z2z2(), 3) == std::vector<Int>{2, 2, 2});
  CHECK(group_homology(*s3(), 3) == std::vector<Int>{6});

  CHECK(group_homology(*zmod(2), 2).empty());
  CHECK(group_homology(*zmod(5), 2).empty());
  CHECK(group_homology(*z2z2(), 2) == std::vector<Int>{2});
  CHECK(group_homology(*s3(), 2).empty());
  CHECK(group_homology(*d4(), 2) == std::vector<Int>{2});

  CHECK(group_homology(*zmod(2), 4).empty());
  CHECK(group_homology(*zmod(3), 4).empty());

  // degree 1 is the abelianization; compare order, exponent, divisibility
  for (const auto& g : {zmod(2), zmod(3), zmod(4), zmod(6), z2z2(), s3(), d4()}) {
    auto factors = group_homology(*g, 1);
    auto [order, exponent] = abelianization_oracle(*g);
    Int product = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      product *= factors[i];
      CHECK(factors[i] > 1);
      if (i + 1 < factors.size()) CHECK(factors[i + 1] % factors[i] == 0);
    }
    CHECK(product == Int(order));
    if (!factors.empty()) CHECK(factors.back() == Int(exponent));
  }
  CHECK(group_homology(*s3(), 1) == std::vector<Int>{2});

  CHECK_THROWS_AS(group_homology(*zmod(12), 4), SizeGuardError);
  CHECK_THROWS_AS(group_homology(*zmod(2), 0), PreconditionError);
  CHECK_THROWS_AS(group_homology(*zmod(2), 5), PreconditionError);
}

TEST_CASE("cocycle solving over a finite lattice") {
  // oracle first: exhaustive kernel counts for the smallest cases
  CHECK(exhaustive_cocycle_count(zmod(2), 4) == 2);
  CHECK(exhaustive_cocycle_count(zmod(3), 3) == 27);

  auto r2 = solve_cocycles(zmod(2), 3, Int(4));
  CHECK(r2.cocycle_count == 2);
  CHECK(r2.class_count == 2);
  CHECK(r2.matches_homology);
  REQUIRE(r2.representatives.size() == 2);
  bool has_zero = false, has_generator = false;
  for (const auto& rep : r2.representatives) {
    CHECK(is_three_cocycle(rep));
    CHECK(rep.normalized());
    has_zero |= rep.is_zero();
    has_generator |= rep == cyclic_three_cocycle(2, 1);
  }
  CHECK(has_zero);
  CHECK(has_generator);

  auto r3 = solve_cocycles(zmod(3), 3, Int(3));
  CHECK(r3.cocycle_count == 27);
  CHECK(r3.class_count == 3);
  CHECK(r3.matches_homology);

  auto r9 = solve_cocycles(zmod(3), 3, Int(9));
  CHECK(r9.class_count == 3);
  CHECK(r9.matches_homology);

  // class counts match homology across the suite at M = |G|^2
  for (const auto& g : {zmod(2), zmod(3), zmod(4), z2z2(), s3()}) {
    auto res = solve_cocycles(g, 3, Int(g->order() * g->order()));
    Int expected = 1;
    for (const Int& d : group_homology(*g, 3)) expected *= d;
    CHECK(res.class_count == expected);
    CHECK(res.matches_homology);
    for (const auto& rep : res.representatives) CHECK(is_three_cocycle(rep));
    // representatives are pairwise non-cohomologous
    for (std::size_t i = 0; i < res.representatives.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        auto diff = res.representatives[i] - res.representatives[j];
        CHECK_FALSE(is_coboundary(diff, Int(g->order() * g->order())).has_value());
      }
  }

  // an insufficient modulus undershoots and says so
  auto odd = solve_cocycles(zmod(2), 3, Int(3));
  CHECK(odd.class_count == 1);
  CHECK_FALSE(odd.matches_homology);

  auto m1 = solve_cocycles(zmod(4), 3, Int(1));
  CHECK(m1.cocycle_count == 1);
  CHECK(m1.class_count == 1);
  REQUIRE(m1.representatives.size() == 1);
  CHECK(m1.representatives[0].is_zero());

  // degree 1 classes are homomorphisms into (1/M)Z/Z
  auto h1 = solve_cocycles(zmod(3), 1, Int(9));
  CHECK(h1.class_count == 3);
  CHECK(h1.matches_homology);
}

TEST_CASE("loop two-cochains and the loop cocycle condition") {
  auto g = s3();
  LoopTwoCochain zero(g);
  CHECK(zero.is_zero());
  CHECK(zero.normalized());
  CHECK(is_loop_two_cocycle(zero));

  // pullbacks of group 2-cocycles along the source map are loop 2-cocycles
  std::mt19937 rng(99);
  for (const auto& grp : {zmod(3), s3()}) {
    auto beta = differential(random_cochain(grp, 1, 6, rng));  // a 2-cocycle
    LoopTwoCochain w(grp);
    for (std::size_t x = 0; x < grp->order(); ++x)
      for (std::size_t a = 0; a < grp->order(); ++a)
        for (std::size_t b = 0; b < grp->order(); ++b) w.set(x, a, b, beta.at({a, b}));
    CHECK(is_loop_two_cocycle(w));

    auto perturbed = w;
    perturbed.set(0, 1, 1, w.at(0, 1, 1) + Phase(Int(1), Int(5)));
    CHECK_FALSE(is_loop_two_cocycle(perturbed));
  }

  LoopTwoCochain nn(zmod(2));
  nn.set(0, 0, 1, Phase(Int(1), Int(2)));
  CHECK_FALSE(nn.normalized());
}
