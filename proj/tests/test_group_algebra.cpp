#include "catch2/catch_amalgamated.hpp"

#include <random>

#include "hecke/group_algebra.hpp"

using namespace hecke;

namespace {

GroupAlgebraElement random_element(std::mt19937& rng, const FiniteGroup& G, int points = 4) {
  std::uniform_int_distribution<gidx> pick(0, G.order() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  GroupAlgebraElement f(G);
  for (int i = 0; i < points; ++i)
    f.add_term(pick(rng), CycloScalar(coeff(rng)) + CycloScalar(coeff(rng)) * CycloScalar::root_of_unity(4, 1));
  return f;
}

} // namespace

TEST_CASE("convolution identities") {
  auto b = build_group("SL2", 3);
  const FiniteGroup& G = *b.group;
  std::mt19937 rng(5);

  GroupAlgebraElement de = GroupAlgebraElement::delta(G, G.identity());
  GroupAlgebraElement f = random_element(rng, G);
  CHECK(convolve(de, f) == f);
  CHECK(convolve(f, de) == f);

  std::uniform_int_distribution<gidx> pick(0, G.order() - 1);
  gidx a = pick(rng), c = pick(rng);
  CHECK(convolve(GroupAlgebraElement::delta(G, a), GroupAlgebraElement::delta(G, c)) ==
        GroupAlgebraElement::delta(G, G.mul(a, c)));

  GroupAlgebraElement eB = subgroup_idempotent(G, b.chain.B);
  CHECK(convolve(eB, eB) == eB);

  auto other = build_group("SL2", 2);
  GroupAlgebraElement g2 = GroupAlgebraElement::delta(*other.group, 0);
  CHECK_THROWS_AS(convolve(f, g2), error);
}

TEST_CASE("star is a conjugate-linear anti-involution") {
  auto b = build_group("SL2", 3);
  const FiniteGroup& G = *b.group;
  std::mt19937 rng(7);

  gidx a = 5;
  CHECK(star(GroupAlgebraElement::delta(G, a)) == GroupAlgebraElement::delta(G, G.inv(a)));

  GroupAlgebraElement eB = subgroup_idempotent(G, b.chain.B);
  CHECK(star(eB) == eB);

  CycloScalar i = CycloScalar::root_of_unity(4, 1);
  CHECK(star(i * GroupAlgebraElement::delta(G, a)) ==
        (-i) * GroupAlgebraElement::delta(G, G.inv(a)));

  for (int t = 0; t < 12; ++t) {
    GroupAlgebraElement f = random_element(rng, G);
    GroupAlgebraElement g = random_element(rng, G);
    CHECK(star(convolve(f, g)) == convolve(star(g), star(f)));
    CHECK(star(star(f)) == f);
  }
}

TEST_CASE("associativity on randomized triples") {
  auto b = build_group("GL2", 3);
  const FiniteGroup& G = *b.group;
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    GroupAlgebraElement f = random_element(rng, G);
    GroupAlgebraElement g = random_element(rng, G);
    GroupAlgebraElement h = random_element(rng, G);
    CHECK(convolve(convolve(f, g), h) == convolve(f, convolve(g, h)));
  }
}

TEST_CASE("subgroup idempotent examples") {
  auto b = build_group("SL2", 2);
  const FiniteGroup& G = *b.group;

  CHECK(subgroup_idempotent(G, {G.identity()}) == GroupAlgebraElement::delta(G, G.identity()));

  std::vector<gidx> whole(G.order());
  std::iota(whole.begin(), whole.end(), 0);
  GroupAlgebraElement eG = subgroup_idempotent(G, whole);
  CHECK(eG.support_size() == G.order());
  CHECK(eG.coeff(3) == CycloScalar(Rational(1, 6)));

  GroupAlgebraElement eB = subgroup_idempotent(G, b.chain.B);
  CHECK(eB.support_size() == 2);
  for (auto& [g, v] : eB.terms()) CHECK(v == CycloScalar(Rational(1, 2)));
}

TEST_CASE("bi-invariance of corner elements") {
  auto b = build_group("SL2", 3);
  const FiniteGroup& G = *b.group;
  std::mt19937 rng(13);
  GroupAlgebraElement eB = subgroup_idempotent(G, b.chain.B);
  GroupAlgebraElement f = random_element(rng, G, 6);
  GroupAlgebraElement h = convolve(eB, convolve(f, eB));
  for (gidx x = 0; x < G.order(); ++x)
    for (gidx j : b.chain.B)
      for (gidx jp : b.chain.B)
        CHECK(h.coeff(G.mul(j, G.mul(x, jp))) == h.coeff(x));
}

TEST_CASE("positivity seed at the identity coefficient") {
  auto b = build_group("SL2", 3);
  const FiniteGroup& G = *b.group;
  std::mt19937 rng(17);
  for (int t = 0; t < 10; ++t) {
    GroupAlgebraElement f = random_element(rng, G);
    CycloScalar c = convolve(star(f), f).coeff(G.identity());
    CHECK(c.is_totally_real());
    // the coefficient is the explicit sum of coefficient norms
    CycloScalar expected;
    for (auto& [g, v] : f.terms()) expected += norm_square(v);
    CHECK(c == expected);
    CHECK(c.is_zero() == f.is_zero());
  }
}

TEST_CASE("element serialization") {
  auto b = build_group("SL2", 2);
  const FiniteGroup& G = *b.group;
  GroupAlgebraElement f = GroupAlgebraElement::delta(G, G.identity(), CycloScalar(Rational(1, 2)));
  CHECK(f.to_string() == "Q(zeta_1): 1/2 * [[1,0],[0,1]]");
  CHECK(GroupAlgebraElement(G).to_string() == "0");
}
