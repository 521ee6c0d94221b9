#include "catch2/catch_amalgamated.hpp"

#include <numeric>

#include "hecke/groups.hpp"

using namespace hecke;

TEST_CASE("built groups match brute-force orders and Borel data") {
  auto sl2_2 = build_group("SL2", 2);
  CHECK(sl2_2.group->order() == 6);
  CHECK(sl2_2.chain.B.size() == 2);
  CHECK(sl2_2.group->order() / sl2_2.chain.B.size() == 3);

  auto sl2_3 = build_group("SL2", 3);
  CHECK(sl2_3.group->order() == 24);
  CHECK(sl2_3.chain.B.size() == 6);
  CHECK(sl2_3.group->order() / sl2_3.chain.B.size() == 4);

  auto gl2_3 = build_group("GL2", 3);
  CHECK(gl2_3.group->order() == 48);
  CHECK(gl2_3.chain.B.size() == 12);
  CHECK(gl2_3.group->order() / gl2_3.chain.B.size() == 4);
}

TEST_CASE("unsupported configurations are rejected") {
  CHECK_THROWS_AS(build_group("SP4", 3), error);
  CHECK_THROWS_AS(build_group("SL2", 9), error);
  CHECK_THROWS_AS(build_group("SL2", 6), error); // not a prime power
  CHECK_THROWS_AS(build_group("GL2", 3, "p21"), error);
}

TEST_CASE("conjugacy classes partition the group") {
  auto b = build_group("SL2", 2);
  const FiniteGroup& G = *b.group;
  REQUIRE(G.num_classes() == 3);
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  for (auto& c : G.conjugacy_classes()) {
    sizes.push_back(c.size());
    total += c.size();
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
  CHECK(total == G.order());

  auto b3 = build_group("SL2", 3);
  CHECK(b3.group->num_classes() == 7);
  std::size_t total3 = 0;
  for (auto& c : b3.group->conjugacy_classes()) total3 += c.size();
  CHECK(total3 == b3.group->order());

  CHECK(b3.group->order() % b3.group->exponent() == 0);
  CHECK(b3.group->exponent() == 12);
}

TEST_CASE("double cosets and the Bruhat count") {
  auto b2 = build_group("SL2", 2);
  auto dc = double_cosets(*b2.group, b2.chain.B, b2.chain.B);
  CHECK(dc.representatives.size() == 2);

  std::vector<gidx> whole(b2.group->order());
  std::iota(whole.begin(), whole.end(), 0);
  CHECK(double_cosets(*b2.group, whole, whole).representatives.size() == 1);

  auto b3 = build_group("SL2", 3);
  CHECK(double_cosets(*b3.group, b3.chain.B, b3.chain.B).representatives.size() == 2);

  auto g3 = build_group("GL2", 3);
  CHECK(double_cosets(*g3.group, g3.chain.B, g3.chain.B).representatives.size() == 2);

  auto gl3 = build_group("GL3", 2);
  CHECK(gl3.group->order() == 168);
  CHECK(double_cosets(*gl3.group, gl3.chain.B, gl3.chain.B).representatives.size() == 6);
  CHECK(gl3.weyl_order == 6);
}

TEST_CASE("Levi decomposition is a verified bijection") {
  for (auto cfg : {std::pair<std::string, unsigned>{"SL2", 3}, {"GL2", 3}}) {
    auto b = build_group(cfg.first, cfg.second);
    b.chain.verify();
    for (gidx p : b.chain.P) {
      auto [m, u] = b.chain.levi_factor(p);
      CHECK(b.group->mul(m, u) == p);
      CHECK(std::binary_search(b.chain.M.begin(), b.chain.M.end(), m));
      CHECK(std::binary_search(b.chain.U.begin(), b.chain.U.end(), u));
    }
  }
  auto gl3 = build_group("GL3", 2, "p21");
  gl3.chain.verify();
  CHECK(gl3.chain.M.size() == 6);  // GL2(F2) x GL1(F2)
  CHECK(gl3.chain.U.size() == 4);
}

TEST_CASE("weyl orbits of torus characters") {
  auto sl2_3 = build_group("SL2", 3);
  TorusCharacter triv = trivial_character(sl2_3.chain);
  CHECK(triv.is_trivial());
  CHECK(weyl_orbit(sl2_3.chain, triv).size() == 1);

  // The SL2(F3) torus is {I, -I}, which is central, so even the nontrivial
  // character has a singleton orbit.
  TorusCharacter chi = torus_character(sl2_3.chain, {1, 0});
  CHECK(!chi.is_trivial());
  CHECK(weyl_orbit(sl2_3.chain, chi).size() == 1);

  // trivial torus: SL2(F2)
  auto sl2_2 = build_group("SL2", 2);
  CHECK(sl2_2.chain.M.size() == 1);
  CHECK(weyl_orbit(sl2_2.chain, trivial_character(sl2_2.chain)).size() == 1);

  // GL2(F3): chi = (sgn, 1) is genuinely moved by the Weyl reflection
  auto gl2_3 = build_group("GL2", 3);
  TorusCharacter psi = torus_character(gl2_3.chain, {1, 0});
  auto orbit = weyl_orbit(gl2_3.chain, psi);
  CHECK(orbit.size() == 2);
  TorusCharacter swapped = torus_character(gl2_3.chain, {0, 1});
  bool found = false;
  for (auto& c : orbit) found = found || c == swapped;
  CHECK(found);

  // non-abelian Levi is rejected
  auto p21 = build_group("GL3", 2, "p21");
  CHECK_THROWS_AS(torus_character(p21.chain, {0, 0, 0}), error);
}

TEST_CASE("matrix helpers") {
  auto b = build_group("SL2", 3);
  const FiniteGroup& G = *b.group;
  gidx s = b.simple_reflections[0];
  CHECK(G.matrix_to_string(s) == "[[0,2],[1,0]]");
  CHECK(G.transpose_of(G.identity()) == G.identity());
  // transpose of the reflection is its negative-swap; double transpose fixes
  CHECK(G.transpose_of(G.transpose_of(s)) == s);
  // inverse table
  for (gidx a = 0; a < G.order(); ++a) CHECK(G.mul(a, G.inv(a)) == G.identity());
}
