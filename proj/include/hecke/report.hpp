#pragma once

#include <sstream>
#include <string>

#include "json.hpp"

#include "hecke/involutions.hpp"
#include "hecke/scenario.hpp"

namespace hecke {

using json = nlohmann::json;

// Character table as text: one row per irreducible, "class -> value" columns.
inline std::string character_table_text(const CharacterTable& t) {
  const FiniteGroup& G = t.group();
  std::ostringstream os;
  os << G.family() << "(F" << G.q() << ")  classes=" << G.num_classes()
     << "  conductor=" << t.conductor() << "\n";
  os << "class sizes:";
  for (auto& c : G.conjugacy_classes()) os << " " << c.size();
  os << "\nclass reps:";
  for (auto& c : G.conjugacy_classes()) os << " " << G.matrix_to_string(c[0]);
  os << "\n";
  for (unsigned i = 0; i < t.num_irreducibles(); ++i) {
    os << "chi_" << i << " (deg " << t.degree(i) << "):";
    for (unsigned c = 0; c < G.num_classes(); ++c) os << "  " << t.value(i, c).to_string();
    os << "\n";
  }
  return os.str();
}

// Golden-format model summary: degrees, eigenvector multiplicities, character
// values per constituent.
inline std::string model_summary_text(const Scenario& s) {
  std::ostringstream os;
  os << s.spec.name() << "\n";
  for (const IrreducibleModel& m : s.xi) {
    os << "model row=" << m.table_index << " deg=" << m.deg << " bfix=" << m.bfix_dim << " values:";
    for (const CycloScalar& v : m.char_by_class) os << "  " << v.to_string();
    os << "\n";
  }
  return os.str();
}

inline json idempotent_report(const Scenario& s) {
  CompatibilityReport r = verify_compatibility(s.eXi, s.eSigma, s.eDelta);
  json j;
  j["sigma_support"] = s.eSigma.elt.support_size();
  j["delta_support"] = s.eDelta.elt.support_size();
  j["xi_support"] = s.eXi.elt.support_size();
  j["orbit_size"] = s.orbit.size();
  j["identities"] = {
      {"sigma_idempotent", r.sigma_idempotent}, {"delta_idempotent", r.delta_idempotent},
      {"xi_idempotent", r.xi_idempotent},       {"xi_central", r.xi_central},
      {"xi_sigma_left", r.xi_sigma_left},       {"xi_sigma_right", r.xi_sigma_right},
      {"xi_delta_left", r.xi_delta_left},       {"xi_delta_right", r.xi_delta_right},
  };
  j["all_hold"] = r.all_hold();
  return j;
}

inline json dimension_report(const Scenario& s) {
  json j;
  std::size_t degsq = 0;
  std::set<int> rows;
  for (const IrreducibleModel& m : s.xi)
    if (rows.insert(m.table_index).second) degsq += static_cast<std::size_t>(m.deg) * m.deg;
  auto dc = double_cosets(s.group(), s.chain().B, s.chain().B);
  j["bruhat_double_cosets"] = dc.representatives.size();
  j["H_borel"] = s.H_borel->dimension();
  j["H_sigma"] = s.H_sigma->dimension();
  j["H_delta"] = s.H_delta->dimension();
  j["H_xi"] = s.H_xi->dimension();
  j["H_xi_expected"] = degsq;
  j["bim_xi_sigma"] = s.bim_xi_sigma->dimension();
  j["bim_sigma_xi"] = s.bim_sigma_xi->dimension();
  j["center_H_xi"] = s.H_xi->center_coords().size();
  j["center_H_sigma"] = s.H_sigma->center_coords().size();
  j["xi_count"] = rows.size();
  return j;
}

inline json certificate_report(const Scenario& s) {
  json j;
  j["verified"] = verify_certificate(s.cert);
  j["witness_count"] = s.cert.a.size();
  json supports = json::array();
  for (const GroupAlgebraElement& w : s.cert.sa_witness) supports.push_back(w.support_size());
  j["witness_supports"] = supports;
  json scales = json::array();
  for (const CycloScalar& c : s.cert.sa_scale) scales.push_back(c.to_string());
  j["self_adjoint_scales"] = scales;
  j["alternate_verified"] = verify_certificate(s.cert_alt);
  return j;
}

inline json center_transfer_report(const Scenario& s) {
  json j;
  auto zb = s.H_sigma->center_coords();
  std::vector<GroupAlgebraElement> zs, ws;
  for (const CVec& c : zb) {
    GroupAlgebraElement z = s.H_sigma->from_coords(c);
    zs.push_back(z);
    ws.push_back(center_transfer(*s.H_xi, *s.H_sigma, s.cert, z));
  }
  j["dimension"] = zs.size();
  j["unital"] = center_transfer(*s.H_xi, *s.H_sigma, s.cert, s.eSigma.elt) == s.eXi.elt;

  bool independent = true;
  for (const GroupAlgebraElement& z : zs)
    independent =
        independent && center_transfer(*s.H_xi, *s.H_sigma, s.cert_alt, z) ==
                           center_transfer(*s.H_xi, *s.H_sigma, s.cert, z);
  j["certificate_independent"] = independent;

  // multiplication tables before and after transfer, in the respective bases
  auto table_of = [&](const std::vector<GroupAlgebraElement>& basis) {
    std::vector<CVec> rows;
    for (const GroupAlgebraElement& b : basis) {
      CVec v(s.group().order());
      for (auto& [g, c] : b.terms()) v[g] = c;
      rows.push_back(v);
    }
    json table = json::array();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      json rowi = json::array();
      for (std::size_t jdx = 0; jdx < basis.size(); ++jdx) {
        GroupAlgebraElement prod = convolve(basis[i], basis[jdx]);
        CVec v(s.group().order());
        for (auto& [g, c] : prod.terms()) v[g] = c;
        auto coords = coordinates_in(rows, v);
        json entry = json::array();
        require(coords.has_value(), "center table: product outside the span");
        for (const CycloScalar& c : *coords) entry.push_back(c.to_string());
        rowi.push_back(entry);
      }
      table.push_back(rowi);
    }
    return table;
  };
  j["multiplication_table_source"] = table_of(zs);
  j["multiplication_table_transferred"] = table_of(ws);
  j["tables_match"] = j["multiplication_table_source"] == j["multiplication_table_transferred"];
  return j;
}

inline json morita_report(const Scenario& s) {
  json j;
  j["factorizations"] =
      bimodule_factorization_check(*s.H_xi, *s.H_sigma, *s.bim_xi_sigma, *s.bim_sigma_xi);
  CyclicFgReport rep =
      cyclic_and_fg_module_checks(*s.H_xi, *s.H_sigma, *s.bim_xi_sigma, *s.bim_sigma_xi);
  j["cyclic_left"] = rep.cyclic_left;
  j["finitely_generated"] = rep.finitely_generated;
  j["generator_count"] = rep.generator_count;

  bool roundtrips = true;
  std::set<int> done;
  for (const IrreducibleModel& m : s.xi) {
    if (!done.insert(m.table_index).second) continue;
    FiniteModule X = simple_module_from_model(*s.H_sigma, m);
    FiniteModule TX = tensor_transport(*s.H_xi, *s.H_sigma, *s.bim_xi_sigma, X);
    FiniteModule back = tensor_transport(*s.H_sigma, *s.H_xi, *s.bim_sigma_xi, TX);
    roundtrips = roundtrips && invertible_intertwiner(X, back).has_value();
  }
  FiniteModule reg = regular_module(*s.H_sigma);
  FiniteModule treg = tensor_transport(*s.H_xi, *s.H_sigma, *s.bim_xi_sigma, reg);
  FiniteModule reg_back = tensor_transport(*s.H_sigma, *s.H_xi, *s.bim_sigma_xi, treg);
  roundtrips = roundtrips && invertible_intertwiner(reg, reg_back).has_value();
  j["functor_round_trips"] = roundtrips;
  return j;
}

inline json involution_report(const Scenario& s) {
  json j;
  AntiInvolution circ = restrict_star(*s.H_sigma);
  auto data = extension_data(s, 0);
  AntiInvolution ext = extend_involution(*s.H_xi, *s.H_sigma, circ, data);

  json action = json::array();
  for (std::size_t jcol = 0; jcol < s.H_xi->dimension(); ++jcol) {
    json col = json::array();
    for (std::size_t i = 0; i < s.H_xi->dimension(); ++i) col.push_back(ext.mat.at(i, jcol).to_string());
    action.push_back(col);
  }
  j["extension_action_matrix"] = action;

  AntiInvolution st = restrict_star(*s.H_xi);
  j["extension_equals_star"] = ext.mat == st.mat;

  auto data2 = extension_data(s, 1);
  AntiInvolution ext2 = extend_involution(*s.H_xi, *s.H_sigma, circ, data2);
  j["eigenvector_choice_independent"] = ext.mat == ext2.mat;

  AntiInvolution bullet = bullet_on_finite_hecke(*s.H_borel, *s.built);
  json btable = json::array();
  for (std::size_t jcol = 0; jcol < s.H_borel->dimension(); ++jcol) {
    json col = json::array();
    for (std::size_t i = 0; i < s.H_borel->dimension(); ++i)
      col.push_back(bullet.mat.at(i, jcol).to_string());
    btable.push_back(col);
  }
  j["bullet_on_finite_hecke"] = btable;

  // transported Gram matrices of the simple modules
  json grams = json::array();
  std::set<int> done;
  for (const IrreducibleModel& m : s.xi) {
    if (!done.insert(m.table_index).second) continue;
    HermitianModule X;
    X.module = simple_module_from_model(*s.H_sigma, m);
    Matrix pe = operator_image(s.H_sigma->left_idempotent(), m);
    RowSpan span(m.deg);
    for (unsigned jj = 0; jj < m.deg; ++jj) span.add(pe.col(jj));
    std::vector<CVec> basis(span.rref_rows().begin(), span.rref_rows().end());
    X.gram = Matrix(X.module.dim, X.module.dim);
    for (unsigned a = 0; a < X.module.dim; ++a)
      for (unsigned b = 0; b < X.module.dim; ++b) X.gram.at(a, b) = m.form(basis[a], basis[b]);
    HermitianModule TX = transport_hermitian_form(*s.H_xi, *s.H_sigma, *s.bim_xi_sigma, X, ext);
    json gram = json::array();
    for (std::size_t a = 0; a < TX.gram.rows(); ++a) {
      json row = json::array();
      for (std::size_t b = 0; b < TX.gram.cols(); ++b) row.push_back(TX.gram.at(a, b).to_string());
      gram.push_back(row);
    }
    grams.push_back({{"model_row", m.table_index},
                     {"gram", gram},
                     {"positive_definite", is_positive_definite(TX.gram)}});
  }
  j["transported_forms"] = grams;
  return j;
}

inline json scenario_report(const Scenario& s) {
  json j;
  j["scenario"] = s.spec.name();
  j["group"] = {{"family", s.spec.family},
                {"q", s.spec.q},
                {"order", s.group().order()},
                {"exponent", s.group().exponent()},
                {"classes", s.group().num_classes()},
                {"borel_order", s.chain().B.size()}};
  json xi = json::array();
  for (const IrreducibleModel& m : s.xi)
    xi.push_back({{"table_row", m.table_index}, {"degree", m.deg}, {"bfix_dim", m.bfix_dim}});
  j["xi"] = xi;
  j["idempotents"] = idempotent_report(s);
  j["dimensions"] = dimension_report(s);
  j["certificate"] = certificate_report(s);
  j["morita"] = morita_report(s);
  j["center_transfer"] = center_transfer_report(s);
  return j;
}

} // namespace hecke
