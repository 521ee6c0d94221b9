#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/corner.hpp"
#include "hecke/idempotents.hpp"
#include "hecke/morita.hpp"
#include "hecke/reps.hpp"

namespace hecke {

// A scenario fixes a group family, a field size, a parabolic and a torus
// character; everything downstream (models, idempotents, corner algebras,
// certificates) is assembled once and shared.
struct ScenarioSpec {
  std::string family;
  unsigned q = 2;
  std::vector<int> chi_exponents; // empty = trivial character
  std::string parabolic = "borel";

  std::string name() const {
    std::string out = family + "(F" + std::to_string(q) + ")";
    if (parabolic != "borel") out += "[" + parabolic + "]";
    out += ", chi=";
    if (chi_exponents.empty()) {
      out += "trivial";
    } else {
      out += "(";
      for (std::size_t i = 0; i < chi_exponents.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(chi_exponents[i]);
      }
      out += ")";
    }
    return out;
  }
};

struct Scenario {
  ScenarioSpec spec;
  std::unique_ptr<BuiltGroup> built;
  std::unique_ptr<CharacterTable> table;
  unsigned conductor = 1;

  TorusCharacter chi;
  std::vector<TorusCharacter> orbit;
  std::vector<IrreducibleModel> xi;

  PeterWeylIdempotent eSigma, eDelta, eXi;
  GroupAlgebraElement eB;

  std::unique_ptr<CornerAlgebra> H_sigma, H_delta, H_xi, H_borel;
  std::unique_ptr<CornerAlgebra> bim_xi_sigma, bim_sigma_xi; // e_Xi CG e_sigma and transpose

  FullIdempotentCertificate cert, cert_alt;

  const FiniteGroup& group() const { return *built->group; }
  const SubgroupChain& chain() const { return built->chain; }

  // per-constituent basis data (orthogonal bases with norms)
  std::vector<ModelBasis> model_bases() const {
    std::vector<ModelBasis> out;
    for (const IrreducibleModel& m : xi) {
      auto [vs, norms] = orthogonal_basis(m);
      out.push_back(ModelBasis{&m, vs, norms});
    }
    return out;
  }
};

inline std::unique_ptr<Scenario> build_scenario(const ScenarioSpec& spec) {
  auto s = std::make_unique<Scenario>();
  s->spec = spec;
  s->built = std::make_unique<BuiltGroup>(build_group(spec.family, spec.q, spec.parabolic));
  s->table = std::make_unique<CharacterTable>(*s->built->group);
  s->conductor = s->table->conductor();

  std::vector<int> exps = spec.chi_exponents;
  if (exps.empty()) exps.assign(s->built->group->matrix_dim(), 0);
  s->chi = torus_character(s->built->chain, exps);
  s->orbit = weyl_orbit(s->built->chain, s->chi);
  s->xi = decompose_induced(s->built->chain, s->chi, *s->table);

  s->eSigma = build_e_sigma(s->built->chain, s->chi);
  s->eDelta = build_e_delta(s->built->chain, s->orbit);
  s->eXi = build_e_xi(s->built->chain, *s->table, s->xi);
  s->eB = subgroup_idempotent(*s->built->group, s->built->chain.B);

  s->H_sigma = std::make_unique<CornerAlgebra>(s->eSigma.elt, s->eSigma.elt);
  s->H_delta = std::make_unique<CornerAlgebra>(s->eDelta.elt, s->eDelta.elt);
  s->H_xi = std::make_unique<CornerAlgebra>(s->eXi.elt, s->eXi.elt);
  s->H_borel = std::make_unique<CornerAlgebra>(s->eB, s->eB);
  s->bim_xi_sigma = std::make_unique<CornerAlgebra>(s->eXi.elt, s->eSigma.elt);
  s->bim_sigma_xi = std::make_unique<CornerAlgebra>(s->eSigma.elt, s->eXi.elt);

  s->cert = certify_full_idempotent(s->xi, s->built->chain, s->chi, s->conductor, s->eXi.elt,
                                    s->eSigma.elt, 0);
  s->cert_alt = certify_full_idempotent(s->xi, s->built->chain, s->chi, s->conductor, s->eXi.elt,
                                        s->eSigma.elt, 1);
  return s;
}

// The acceptance scenarios: {SL2(F2), SL2(F3), GL2(F3)} x {trivial, one
// nontrivial Weyl orbit when it exists}.
inline std::vector<ScenarioSpec> acceptance_scenarios() {
  return {
      {"SL2", 2, {}, "borel"},
      {"SL2", 3, {}, "borel"},
      {"SL2", 3, {1, 0}, "borel"},
      {"GL2", 3, {}, "borel"},
      {"GL2", 3, {1, 0}, "borel"},
  };
}

} // namespace hecke
