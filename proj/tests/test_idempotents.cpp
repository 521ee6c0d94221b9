#include "catch2/catch_amalgamated.hpp"

#include <random>

#include "hecke/corner.hpp"
#include "hecke/idempotents.hpp"

using namespace hecke;

namespace {

struct Scene {
  BuiltGroup built;
  std::unique_ptr<CharacterTable> table;
  TorusCharacter chi;
  std::vector<TorusCharacter> orbit;
  std::vector<IrreducibleModel> xi;
  PeterWeylIdempotent eSigma, eDelta, eXi;

  Scene(const std::string& family, unsigned q, std::vector<int> exps = {})
      : built(build_group(family, q)) {
    table = std::make_unique<CharacterTable>(*built.group);
    if (exps.empty()) exps.assign(built.group->matrix_dim(), 0);
    chi = torus_character(built.chain, exps);
    orbit = weyl_orbit(built.chain, chi);
    xi = decompose_induced(built.chain, chi, *table);
    eSigma = build_e_sigma(built.chain, chi);
    eDelta = build_e_delta(built.chain, orbit);
    eXi = build_e_xi(built.chain, *table, xi);
  }
};

} // namespace

TEST_CASE("e_sigma at trivial character is the Borel idempotent") {
  Scene s("SL2", 2);
  CHECK(s.eSigma.elt == subgroup_idempotent(*s.built.group, s.built.chain.B));
  CHECK(s.eDelta.elt == s.eSigma.elt);
}

TEST_CASE("e_sigma for the quadratic character of SL2(F3)") {
  Scene s("SL2", 3, {1, 0});
  // support is exactly B, with e * e = e already verified on construction
  CHECK(s.eSigma.elt.support_size() == s.built.chain.B.size());
  for (auto& [g, v] : s.eSigma.elt.terms())
    CHECK(std::binary_search(s.built.chain.B.begin(), s.built.chain.B.end(), g));
  // distinct characters give orthogonal idempotents
  PeterWeylIdempotent triv = build_e_sigma(s.built.chain, trivial_character(s.built.chain));
  CHECK(convolve(s.eSigma.elt, triv.elt).is_zero());
  CHECK(convolve(triv.elt, s.eSigma.elt).is_zero());
}

TEST_CASE("e_delta sums a complete orbit and rejects incomplete ones") {
  Scene s("GL2", 3, {1, 0});
  REQUIRE(s.orbit.size() == 2);
  CHECK(convolve(s.eDelta.elt, s.eDelta.elt) == s.eDelta.elt);
  CHECK(star(s.eDelta.elt) == s.eDelta.elt);
  CHECK(s.eDelta.elt == build_e_sigma(s.built.chain, s.orbit[0]).elt +
                            build_e_sigma(s.built.chain, s.orbit[1]).elt);
  CHECK_THROWS_AS(build_e_delta(s.built.chain, {s.chi}), error);
}

TEST_CASE("e_xi is central and evaluates as a projector") {
  Scene s("SL2", 2);
  const FiniteGroup& G = *s.built.group;

  // (1/6)(Theta_triv + 2 Theta_St) as built from the decomposed characters
  GroupAlgebraElement expected(G);
  for (auto& m : s.xi) expected = expected + s.table->character_element(m.table_index);
  CHECK(s.eXi.elt == expected);

  CHECK(is_central(s.eXi.elt));
  std::mt19937 rng(3);
  std::uniform_int_distribution<gidx> pick(0, G.order() - 1);
  for (int t = 0; t < 8; ++t) {
    gidx g = pick(rng);
    GroupAlgebraElement d = GroupAlgebraElement::delta(G, g);
    CHECK(convolve(s.eXi.elt, d) == convolve(d, s.eXi.elt));
  }

  // lambda(e_Xi) = Id for lambda in Xi, 0 on a control model outside Xi
  for (auto& m : s.xi) CHECK(operator_image(s.eXi.elt, m) == Matrix::identity(m.deg));
  std::set<int> rows(s.eXi.xi_rows.begin(), s.eXi.xi_rows.end());
  for (unsigned i = 0; i < s.table->num_irreducibles(); ++i) {
    if (rows.count(static_cast<int>(i))) continue;
    IrreducibleModel control = model_from_character(G, *s.table, i);
    CHECK(operator_image(s.eXi.elt, control).is_zero());
  }

  // Xi = all irreducibles gives delta_e (full Fourier inversion)
  GroupAlgebraElement full(G);
  for (unsigned i = 0; i < s.table->num_irreducibles(); ++i)
    full = full + s.table->character_element(i);
  CHECK(full == GroupAlgebraElement::delta(G, G.identity()));
}

TEST_CASE("idem-formula route reproduces e_xi") {
  for (auto cfg : {std::tuple<std::string, unsigned, std::vector<int>>{"SL2", 2, {0, 0}},
                   {"SL2", 3, {0, 0}},
                   {"SL2", 3, {1, 0}},
                   {"GL2", 3, {1, 0}}}) {
    Scene s(std::get<0>(cfg), std::get<1>(cfg), std::get<2>(cfg));
    GroupAlgebraElement sum(*s.built.group);
    std::set<int> done;
    for (auto& m : s.xi) {
      if (!done.insert(m.table_index).second) continue;
      auto [vs, norms] = orthogonal_basis(m);
      for (auto& v : vs) sum = sum + normalized_diagonal_coefficient(m, v);
    }
    CHECK(sum == s.eXi.elt);
  }
}

TEST_CASE("compatibility relations hold in every scenario") {
  for (auto cfg : {std::tuple<std::string, unsigned, std::vector<int>>{"SL2", 2, {0, 0}},
                   {"SL2", 3, {0, 0}},
                   {"SL2", 3, {1, 0}},
                   {"GL2", 3, {0, 0}},
                   {"GL2", 3, {1, 0}}}) {
    Scene s(std::get<0>(cfg), std::get<1>(cfg), std::get<2>(cfg));
    CompatibilityReport r = verify_compatibility(s.eXi, s.eSigma, s.eDelta);
    CHECK(r.all_hold());
  }
}

TEST_CASE("corner algebra dimensions") {
  Scene s2("SL2", 2);
  const FiniteGroup& G = *s2.built.group;
  GroupAlgebraElement eB = subgroup_idempotent(G, s2.built.chain.B);

  CornerAlgebra HB(eB, eB);
  CHECK(HB.dimension() == 2); // #(B \ G / B)

  CornerAlgebra HXi(s2.eXi.elt, s2.eXi.elt);
  CHECK(HXi.dimension() == 5); // 1^2 + 2^2

  GroupAlgebraElement de = GroupAlgebraElement::delta(G, G.identity());
  CornerAlgebra full(de, de);
  CHECK(full.dimension() == G.order());

  // H_Xi dimension = sum of squared degrees, cross-checked by rank
  Scene s3("SL2", 3);
  CornerAlgebra HXi3(s3.eXi.elt, s3.eXi.elt);
  CHECK(HXi3.dimension() == 10); // 1 + 9
}
