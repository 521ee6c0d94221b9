#pragma once

#include <set>
#include <string>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/group_algebra.hpp"
#include "hecke/reps.hpp"

namespace hecke {

// Peter-Weyl idempotents in the group algebra: e_sigma and e_Delta live on
// the parabolic P = MU, e_Xi is the central projector onto the constituents
// of the induced module. All are built from plain character values; the
// defining identities (idempotency, *-fixedness, compatibility) are verified
// by exact convolution.
struct PeterWeylIdempotent {
  enum class Kind { sigma, delta, xi };
  Kind kind = Kind::sigma;
  GroupAlgebraElement elt;
  const SubgroupChain* chain = nullptr;
  std::vector<TorusCharacter> provenance; // chi (sigma), the orbit (delta)
  std::vector<int> xi_rows;               // character table rows (xi)
};

// e_sigma(mu) = chi(m)/|MU| on MU, zero elsewhere; equals e_a * e_U = e_U * e_a.
inline PeterWeylIdempotent build_e_sigma(const SubgroupChain& chain, const TorusCharacter& chi) {
  const FiniteGroup& G = *chain.G;
  GroupAlgebraElement ea(G);
  CycloScalar wM(Rational(1, static_cast<long long>(chain.M.size())));
  for (gidx m : chain.M) ea.add_term(m, wM * chi.value(m));
  GroupAlgebraElement eU = subgroup_idempotent(G, chain.U);

  GroupAlgebraElement es = convolve(ea, eU);
  require(es == convolve(eU, ea), "build_e_sigma: e_a and e_U do not commute");
  require(convolve(es, es) == es, "build_e_sigma: not idempotent");
  require(star(es) == es, "build_e_sigma: not star-fixed");

  // direct display formula
  GroupAlgebraElement display(G);
  CycloScalar wP(Rational(1, static_cast<long long>(chain.P.size())));
  for (gidx p : chain.P) {
    auto [m, u] = chain.levi_factor(p);
    (void)u;
    display.add_term(p, wP * chi.value(m));
  }
  require(es == display, "build_e_sigma: display formula mismatch");

  PeterWeylIdempotent out;
  out.kind = PeterWeylIdempotent::Kind::sigma;
  out.elt = std::move(es);
  out.chain = &chain;
  out.provenance = {chi};
  return out;
}

// e_Delta = sum over the Weyl orbit of e_sigma; the orbit must be complete.
inline PeterWeylIdempotent build_e_delta(const SubgroupChain& chain,
                                         const std::vector<TorusCharacter>& orbit) {
  require(!orbit.empty(), "build_e_delta: empty orbit");
  auto full = weyl_orbit(chain, orbit[0]);
  require(full.size() == orbit.size(), "build_e_delta: incomplete Weyl orbit");
  for (const TorusCharacter& c : full) {
    bool found = false;
    for (const TorusCharacter& o : orbit) found = found || o == c;
    require(found, "build_e_delta: incomplete Weyl orbit");
  }

  const FiniteGroup& G = *chain.G;
  GroupAlgebraElement e(G);
  for (const TorusCharacter& tau : orbit) e = e + build_e_sigma(chain, tau).elt;
  require(convolve(e, e) == e, "build_e_delta: not idempotent");
  require(star(e) == e, "build_e_delta: not star-fixed");

  PeterWeylIdempotent out;
  out.kind = PeterWeylIdempotent::Kind::delta;
  out.elt = std::move(e);
  out.chain = &chain;
  out.provenance = orbit;
  return out;
}

// e_Xi = (1/|G|) sum_{lambda in Xi} deg(lambda) Theta_lambda, from the
// distinct constituents of the list of models.
inline PeterWeylIdempotent build_e_xi(const SubgroupChain& chain, const CharacterTable& table,
                                      const std::vector<IrreducibleModel>& xi_models) {
  const FiniteGroup& G = *chain.G;
  require(&table.group() == &G, "build_e_xi: table/group mismatch");
  std::set<int> rows;
  for (const IrreducibleModel& m : xi_models) {
    require(m.table_index >= 0, "build_e_xi: model without table row");
    rows.insert(m.table_index);
  }
  GroupAlgebraElement e(G);
  for (int r : rows) e = e + table.character_element(static_cast<unsigned>(r));
  require(convolve(e, e) == e, "build_e_xi: not idempotent");
  require(star(e) == e, "build_e_xi: not star-fixed");

  PeterWeylIdempotent out;
  out.kind = PeterWeylIdempotent::Kind::xi;
  out.elt = std::move(e);
  out.chain = &chain;
  out.xi_rows.assign(rows.begin(), rows.end());
  return out;
}

// pi(f) = sum_g f(g) pi(g) on a full-group model.
inline Matrix operator_image(const GroupAlgebraElement& f, const IrreducibleModel& M) {
  Matrix out(M.deg, M.deg);
  for (auto& [g, v] : f.terms()) {
    if (!M.carries(g)) continue;
    out = out + v * M.matrix(g);
  }
  return out;
}

struct CompatibilityReport {
  bool sigma_idempotent = false;
  bool delta_idempotent = false;
  bool xi_idempotent = false;
  bool xi_central = false;
  bool xi_sigma_left = false;   // e_Xi * e_sigma = e_sigma
  bool xi_sigma_right = false;  // e_sigma * e_Xi = e_sigma
  bool xi_delta_left = false;
  bool xi_delta_right = false;

  bool all_hold() const {
    return sigma_idempotent && delta_idempotent && xi_idempotent && xi_central && xi_sigma_left &&
           xi_sigma_right && xi_delta_left && xi_delta_right;
  }
};

inline bool is_central(const GroupAlgebraElement& f) {
  const FiniteGroup& G = *f.group();
  // class-function coefficients
  for (auto& [g, v] : f.terms())
    for (gidx h = 0; h < G.order(); ++h)
      if (f.coeff(G.conjugate(h, g)) != v) return false;
  return true;
}

inline CompatibilityReport verify_compatibility(const PeterWeylIdempotent& eXi,
                                                const PeterWeylIdempotent& eSigma,
                                                const PeterWeylIdempotent& eDelta) {
  CompatibilityReport r;
  const GroupAlgebraElement& x = eXi.elt;
  const GroupAlgebraElement& s = eSigma.elt;
  const GroupAlgebraElement& d = eDelta.elt;
  r.sigma_idempotent = convolve(s, s) == s;
  r.delta_idempotent = convolve(d, d) == d;
  r.xi_idempotent = convolve(x, x) == x;
  r.xi_central = is_central(x);
  r.xi_sigma_left = convolve(x, s) == s;
  r.xi_sigma_right = convolve(s, x) == s;
  r.xi_delta_left = convolve(x, d) == d;
  r.xi_delta_right = convolve(d, x) == d;
  return r;
}

} // namespace hecke
