#include "catch2/catch_amalgamated.hpp"

#include "hecke/characters.hpp"

using namespace hecke;

namespace {

std::vector<unsigned> degree_list(const CharacterTable& t) {
  std::vector<unsigned> d;
  for (unsigned i = 0; i < t.num_irreducibles(); ++i) d.push_back(t.degree(i));
  return d;
}

} // namespace

TEST_CASE("character degrees of the desk-scale groups") {
  auto sl2_2 = build_group("SL2", 2);
  CharacterTable t2(*sl2_2.group);
  CHECK(degree_list(t2) == std::vector<unsigned>{1, 1, 2});

  auto sl2_3 = build_group("SL2", 3);
  CharacterTable t3(*sl2_3.group);
  CHECK(degree_list(t3) == std::vector<unsigned>{1, 1, 1, 2, 2, 2, 3});

  auto gl2_3 = build_group("GL2", 3);
  CharacterTable t4(*gl2_3.group);
  CHECK(degree_list(t4) == std::vector<unsigned>{1, 1, 2, 2, 2, 3, 3, 4});
}

TEST_CASE("GL3(F2) character table") {
  auto g = build_group("GL3", 2);
  CharacterTable t(*g.group);
  CHECK(degree_list(t) == std::vector<unsigned>{1, 3, 3, 6, 7, 8});
}

TEST_CASE("central idempotents are orthogonal projectors summing to delta_e") {
  auto b = build_group("SL2", 3);
  const FiniteGroup& G = *b.group;
  CharacterTable t(G);

  GroupAlgebraElement total(G);
  for (unsigned i = 0; i < t.num_irreducibles(); ++i) {
    GroupAlgebraElement ei = t.central_idempotent(i);
    CHECK(convolve(ei, ei) == ei);
    CHECK(star(ei) == ei);
    total = total + ei;
    for (unsigned j = 0; j < i; ++j)
      CHECK(convolve(ei, t.central_idempotent(j)).is_zero());
  }
  CHECK(total == GroupAlgebraElement::delta(G, G.identity()));
}

TEST_CASE("conjugate character indexing and reality") {
  auto b = build_group("SL2", 3);
  CharacterTable t(*b.group);
  for (unsigned i = 0; i < t.num_irreducibles(); ++i) {
    unsigned j = t.conjugate_index(i);
    CHECK(t.degree(i) == t.degree(j));
    CHECK(t.conjugate_index(j) == i);
  }
}
