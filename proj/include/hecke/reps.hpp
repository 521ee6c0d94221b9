#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/group_algebra.hpp"
#include "hecke/groups.hpp"
#include "hecke/linalg.hpp"

namespace hecke {

// The induced module Ind_P^G(chi~) realized on coset representatives of G/P,
// where chi~(mu) = chi(m) inflates the torus character through the Levi
// factorization. The action is monomial: rho(g) f_i = chi~(r_j^{-1} g r_i) f_j
// with j the coset of g r_i. The coordinate standard form is G-invariant
// because the cocycle values are roots of unity.
struct InducedModule {
  const SubgroupChain* chain = nullptr;
  unsigned conductor = 1;
  std::vector<gidx> coset_reps;
  std::vector<unsigned> coset_of;                 // g -> coset index of gP
  std::vector<std::vector<unsigned>> perm;        // [g][i] = j
  std::vector<std::vector<CycloScalar>> cocycle;  // [g][i]
  std::map<gidx, CycloScalar> chi_values;         // on M, embedded at `conductor`

  unsigned dim() const { return static_cast<unsigned>(coset_reps.size()); }

  CycloScalar chi_tilde(gidx p) const {
    auto [m, u] = chain->levi_factor(p);
    (void)u;
    auto it = chi_values.find(m);
    require(it != chi_values.end(), "InducedModule: Levi part outside the torus");
    return it->second;
  }

  CVec act(gidx g, const CVec& v) const {
    CVec out(v.size());
    for (unsigned i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      out[perm[g][i]] += cocycle[g][i] * v[i];
    }
    return out;
  }

  Matrix action_matrix(gidx g) const {
    Matrix m(dim(), dim());
    for (unsigned i = 0; i < dim(); ++i) m.at(perm[g][i], i) = cocycle[g][i];
    return m;
  }

  std::vector<CycloScalar> character_by_class() const {
    const FiniteGroup& G = *chain->G;
    std::vector<CycloScalar> out(G.num_classes());
    for (unsigned c = 0; c < G.num_classes(); ++c) {
      gidx g = G.conjugacy_classes()[c][0];
      CycloScalar tr;
      for (unsigned i = 0; i < dim(); ++i)
        if (perm[g][i] == i) tr += cocycle[g][i];
      out[c] = tr;
    }
    return out;
  }
};

inline InducedModule build_induced_module(const SubgroupChain& chain, const TorusCharacter& chi,
                                          unsigned conductor) {
  const FiniteGroup& G = *chain.G;
  InducedModule V;
  V.chain = &chain;
  V.conductor = conductor;
  for (gidx m : chain.M) V.chi_values[m] = chi.value(m).embedded(conductor);

  std::vector<bool> seen(G.order(), false);
  V.coset_of.assign(G.order(), 0);
  for (gidx g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    unsigned idx = static_cast<unsigned>(V.coset_reps.size());
    V.coset_reps.push_back(g);
    for (gidx p : chain.P) {
      gidx x = G.mul(g, p);
      seen[x] = true;
      V.coset_of[x] = idx;
    }
  }

  unsigned N = V.dim();
  V.perm.assign(G.order(), std::vector<unsigned>(N));
  V.cocycle.assign(G.order(), std::vector<CycloScalar>(N));
  for (gidx g = 0; g < G.order(); ++g)
    for (unsigned i = 0; i < N; ++i) {
      gidx gri = G.mul(g, V.coset_reps[i]);
      unsigned j = V.coset_of[gri];
      gidx p = G.mul(G.inv(V.coset_reps[j]), gri);
      V.perm[g][i] = j;
      V.cocycle[g][i] = V.chi_tilde(p);
    }
  return V;
}

// Explicit matrices for one irreducible constituent, together with an
// invariant positive definite Hermitian form (the restriction of the ambient
// coordinate standard form). The carrier is the whole group for constituents
// of induced or regular modules; linear characters of subgroups are carried
// on the subgroup and their coefficients extend by zero.
class IrreducibleModel {
public:
  const FiniteGroup* G = nullptr;
  std::vector<gidx> carrier;            // sorted; empty means the whole group
  unsigned deg = 0;
  std::vector<Matrix> rho;              // by ambient index (full) or carrier position
  Matrix gram;
  std::vector<CycloScalar> char_by_class; // full-group models only
  unsigned bfix_dim = 0;                // (B, chi)-eigenspace dimension
  int table_index = -1;                 // row in the character table, if known

  unsigned degree() const { return deg; }
  bool full_group() const { return carrier.empty(); }
  std::size_t carrier_size() const { return full_group() ? G->order() : carrier.size(); }

  const Matrix& matrix(gidx g) const {
    if (full_group()) return rho[g];
    auto it = std::lower_bound(carrier.begin(), carrier.end(), g);
    require(it != carrier.end() && *it == g, "IrreducibleModel: element outside the carrier");
    return rho[static_cast<std::size_t>(it - carrier.begin())];
  }

  bool carries(gidx g) const {
    if (full_group()) return true;
    return std::binary_search(carrier.begin(), carrier.end(), g);
  }

  // <u, v> = u^H Gram v, conjugate-linear in the first slot.
  CycloScalar form(const CVec& u, const CVec& v) const {
    CVec gv = gram * v;
    CycloScalar s;
    for (unsigned i = 0; i < deg; ++i) s += u[i].conj() * gv[i];
    return s;
  }

  bool structurally_equal(const IrreducibleModel& o) const {
    return G == o.G && carrier == o.carrier && deg == o.deg && rho == o.rho;
  }
};

namespace detail {

// Left inverse of a full-column-rank basis matrix (rows are basis vectors of
// length N): returns the pair (pivot row selector, inverse of the pivot
// submatrix) so that coordinates of v are inv * v[pivot_rows].
struct BasisFactor {
  std::vector<std::size_t> pivot_cols;
  Matrix inv; // k x k
};

inline BasisFactor factor_basis(const std::vector<CVec>& basis_rows) {
  std::size_t k = basis_rows.size();
  require(k > 0, "factor_basis: empty basis");
  std::size_t N = basis_rows[0].size();
  Matrix m(k, N);
  for (std::size_t i = 0; i < k; ++i) m.set_row(i, basis_rows[i]);
  Matrix r = m;
  auto pivots = r.rref();
  require(pivots.size() == k, "factor_basis: rows are dependent");
  Matrix sub(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(i, pivots[j]);
  auto inv = sub.inverse();
  require(inv.has_value(), "factor_basis: pivot submatrix is singular");
  // coordinates x of v in the basis satisfy x^T m = v, i.e. for the pivot
  // columns: x^T sub = v[pivots], so x = (sub^T)^{-1} v[pivots].
  BasisFactor f;
  f.pivot_cols = pivots;
  f.inv = sub.transpose().inverse().value();
  return f;
}

inline CVec coordinates(const BasisFactor& f, const CVec& v) {
  CVec picked(f.pivot_cols.size());
  for (std::size_t i = 0; i < f.pivot_cols.size(); ++i) picked[i] = v[f.pivot_cols[i]];
  return f.inv * picked;
}

// Build the model carried by the span of `basis_rows` inside an ambient
// module with monomial action `act`; verifies the homomorphism property on
// generators is implied by exact construction over all elements.
template <class ActFn>
IrreducibleModel model_from_invariant_subspace(const FiniteGroup& G, ActFn&& act,
                                               const std::vector<CVec>& basis_rows) {
  IrreducibleModel M;
  M.G = &G;
  M.deg = static_cast<unsigned>(basis_rows.size());
  BasisFactor f = factor_basis(basis_rows);
  M.rho.resize(G.order());
  for (gidx g = 0; g < G.order(); ++g) {
    Matrix mg(M.deg, M.deg);
    for (unsigned bcol = 0; bcol < M.deg; ++bcol) {
      CVec img = act(g, basis_rows[bcol]);
      CVec coords = coordinates(f, img);
      // exactness check: coords must reproduce img
      CVec back(basis_rows[0].size());
      for (unsigned t = 0; t < M.deg; ++t)
        for (std::size_t j = 0; j < back.size(); ++j) back[j] += coords[t] * basis_rows[t][j];
      require(back == img, "model: subspace is not invariant under the group action");
      for (unsigned r = 0; r < M.deg; ++r) mg.at(r, bcol) = coords[r];
    }
    M.rho[g] = std::move(mg);
  }
  // Gram of the ambient coordinate standard form
  M.gram = Matrix(M.deg, M.deg);
  for (unsigned i = 0; i < M.deg; ++i)
    for (unsigned j = 0; j < M.deg; ++j) M.gram.at(i, j) = hermitian_dot(basis_rows[i], basis_rows[j]);
  const FiniteGroup& GG = G;
  M.char_by_class.resize(GG.num_classes());
  for (unsigned c = 0; c < GG.num_classes(); ++c)
    M.char_by_class[c] = M.rho[GG.conjugacy_classes()[c][0]].trace();
  return M;
}

} // namespace detail

// (B, chi~)-eigenspace of a full-group model: vectors with
// rho(b) w = chi~(b) w for every b in B = MU of the chain.
inline std::vector<CVec> chi_eigenspace(const IrreducibleModel& M, const SubgroupChain& chain,
                                        const TorusCharacter& chi, unsigned conductor) {
  const FiniteGroup& G = *M.G;
  std::vector<gidx> B = chain.P; // Borel-side subgroup of the chain (P = MU)
  Matrix stacked(B.size() * M.deg, M.deg);
  std::size_t row = 0;
  for (gidx b : B) {
    auto [m, u] = chain.levi_factor(b);
    (void)u;
    CycloScalar val = chi.value(m).embedded(conductor);
    const Matrix& rb = M.matrix(b);
    for (unsigned i = 0; i < M.deg; ++i) {
      for (unsigned j = 0; j < M.deg; ++j)
        stacked.at(row, j) = rb.at(i, j) - (i == j ? val : CycloScalar());
      ++row;
    }
  }
  return stacked.kernel_basis();
}

// Decompose Ind_P^G(chi~) into pairwise inequivalent irreducible models with
// invariant forms. Isotypes of multiplicity one are cut out by the exact
// character projector; higher multiplicity isotypes are split through
// double-coset operators whose minimal polynomials factor over Q.
inline std::vector<IrreducibleModel> decompose_induced(const SubgroupChain& chain,
                                                       const TorusCharacter& chi,
                                                       const CharacterTable& table) {
  const FiniteGroup& G = *chain.G;
  unsigned n = table.conductor();
  InducedModule V = build_induced_module(chain, chi, n);
  unsigned N = V.dim();

  std::vector<CycloScalar> theta = V.character_by_class();
  std::vector<IrreducibleModel> out;

  auto act = [&](gidx g, const CVec& v) { return V.act(g, v); };

  std::size_t dim_check = 0;
  for (unsigned lam = 0; lam < table.num_irreducibles(); ++lam) {
    CycloScalar mult = table.inner_product(theta, table.row(lam));
    require(mult.is_rational(), "decompose_induced: non-rational multiplicity");
    Rational mr = mult.rational_value();
    require(den(mr) == 1 && mr >= 0, "decompose_induced: multiplicity is not a nonnegative integer");
    unsigned m = static_cast<unsigned>(num(mr).convert_to<unsigned long long>());
    if (m == 0) continue;
    unsigned d = table.degree(lam);
    dim_check += static_cast<std::size_t>(m) * d;

    // exact isotypic projector (d/|G|) sum_g chi_lam(g^{-1}) rho(g)
    Matrix P(N, N);
    CycloScalar scale(Rational(d, static_cast<long long>(G.order())));
    for (gidx g = 0; g < G.order(); ++g) {
      CycloScalar c = scale * table.value_at(lam, G.inv(g));
      if (c.is_zero()) continue;
      for (unsigned i = 0; i < N; ++i) P.at(V.perm[g][i], i) += c * V.cocycle[g][i];
    }

    RowSpan span(N);
    for (unsigned j = 0; j < N; ++j) span.add(P.col(j));
    require(span.dimension() == static_cast<std::size_t>(m) * d,
            "decompose_induced: isotype rank mismatch");
    std::vector<CVec> isotype(span.rref_rows().begin(), span.rref_rows().end());

    std::vector<std::vector<CVec>> copies;
    if (m == 1) {
      copies.push_back(isotype);
    } else {
      // Split through the commutant: right convolution by h_w = e' * d_w * e'
      // (e' the chi-averaged idempotent of P) commutes with the module action
      // and acts on basis functions by R[j][i] = |P| h_w(r_i^{-1} r_j).
      GroupAlgebraElement echi(G);
      {
        CycloScalar w1(Rational(1, static_cast<long long>(chain.P.size())));
        for (gidx p : chain.P) echi.add_term(p, w1 * V.chi_tilde(p).conj());
      }
      auto dc = double_cosets(G, chain.P, chain.P);
      detail::BasisFactor f = detail::factor_basis(isotype);
      bool split_done = false;
      for (std::size_t w = 0; w < dc.representatives.size() && !split_done; ++w) {
        if (dc.representatives[w] == G.identity()) continue;
        GroupAlgebraElement hw = convolve(echi, convolve(GroupAlgebraElement::delta(G, dc.representatives[w]), echi));
        Matrix RV(N, N);
        CycloScalar measP(static_cast<long long>(chain.P.size()));
        for (unsigned i = 0; i < N; ++i)
          for (unsigned j = 0; j < N; ++j)
            RV.at(j, i) = measP * hw.coeff(G.mul(G.inv(V.coset_reps[i]), V.coset_reps[j]));
        std::size_t k = isotype.size();
        Matrix R(k, k);
        for (unsigned bcol = 0; bcol < k; ++bcol) {
          CVec img(N);
          for (unsigned t = 0; t < N; ++t) {
            if (isotype[bcol][t].is_zero()) continue;
            for (unsigned r2 = 0; r2 < N; ++r2)
              if (!RV.at(r2, t).is_zero()) img[r2] += RV.at(r2, t) * isotype[bcol][t];
          }
          CVec coords = detail::coordinates(f, img);
          for (unsigned r = 0; r < k; ++r) R.at(r, bcol) = coords[r];
        }
        // minimal polynomial of R by iterating powers
        std::vector<Matrix> powers{Matrix::identity(k)};
        RowSpan pspan(k * k);
        auto flat = [&](const Matrix& mm) {
          CVec v(k * k);
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) v[i * k + j] = mm.at(i, j);
          return v;
        };
        pspan.add(flat(powers[0]));
        std::vector<CVec> flats{flat(powers[0])};
        while (true) {
          Matrix next = powers.back() * R;
          CVec fv = flat(next);
          if (!pspan.add(fv)) {
            // next = sum c_t powers[t]
            auto coords = coordinates_in(flats, fv);
            require(coords.has_value(), "decompose_induced: min poly solve failed");
            // monic minimal polynomial x^deg - sum c_t x^t
            std::vector<CycloScalar> mp(powers.size() + 1);
            for (std::size_t t = 0; t < powers.size(); ++t) mp[t] = -(*coords)[t];
            mp[powers.size()] = CycloScalar(1);
            // rational roots
            bool all_rational = true;
            for (auto& cc : mp) all_rational = all_rational && cc.is_rational();
            if (!all_rational) break;
            Integer denlcm = 1;
            for (auto& cc : mp) denlcm = denlcm / boost::multiprecision::gcd(denlcm, den(cc.rational_value())) * den(cc.rational_value());
            std::vector<Integer> ip;
            for (auto& cc : mp) ip.push_back(num(cc.rational_value()) * (denlcm / den(cc.rational_value())));
            // candidates p/q with p | ip[0], q | ip.back()
            std::vector<Rational> roots;
            auto divisors = [](Integer x) {
              std::vector<Integer> ds;
              if (x < 0) x = -x;
              if (x == 0) return ds;
              for (Integer d = 1; d * d <= x; ++d)
                if (x % d == 0) {
                  ds.push_back(d);
                  if (d * d != x) ds.push_back(x / d);
                }
              return ds;
            };
            for (const Integer& pnum : divisors(ip[0].is_zero() ? Integer(1) : ip[0]))
              for (const Integer& qden : divisors(ip.back())) {
                for (int sgn : {1, -1}) {
                  Rational cand(pnum * sgn, qden);
                  Rational val = 0;
                  for (std::size_t t = mp.size(); t-- > 0;) val = val * cand + mp[t].rational_value();
                  if (val == 0) {
                    bool dup = false;
                    for (auto& rr : roots) dup = dup || rr == cand;
                    if (!dup) roots.push_back(cand);
                  }
                }
              }
            if (ip[0].is_zero()) roots.push_back(Rational(0));
            std::sort(roots.begin(), roots.end());
            // eigenspaces of dimension d cut out the copies
            std::vector<std::vector<CVec>> found;
            for (const Rational& a : roots) {
              Matrix shifted = R;
              for (std::size_t i = 0; i < k; ++i) shifted.at(i, i) -= CycloScalar(a);
              auto ker = shifted.kernel_basis();
              if (ker.empty()) continue;
              if (ker.size() != d) { found.clear(); break; }
              std::vector<CVec> copy;
              for (auto& coords2 : ker) {
                CVec vec(N);
                for (std::size_t t = 0; t < k; ++t)
                  for (unsigned c2 = 0; c2 < N; ++c2) vec[c2] += coords2[t] * isotype[t][c2];
                copy.push_back(std::move(vec));
              }
              // canonicalize through RREF for determinism
              RowSpan rs(N);
              for (auto& vv : copy) rs.add(vv);
              found.emplace_back(rs.rref_rows().begin(), rs.rref_rows().end());
            }
            if (found.size() == m) {
              copies = std::move(found);
              split_done = true;
            }
            break;
          }
          powers.push_back(std::move(next));
          flats.push_back(fv);
        }
      }
      require(split_done,
              "decompose_induced: exact eigen-splitting of a multiplicity-" + std::to_string(m) +
                  " isotype failed (no double-coset operator with split rational spectrum)");
    }

    for (auto& copy : copies) {
      IrreducibleModel M = detail::model_from_invariant_subspace(G, act, copy);
      M.table_index = static_cast<int>(lam);
      require(M.char_by_class == table.row(lam), "decompose_induced: constituent character mismatch");
      auto eig = chi_eigenspace(M, chain, chi, n);
      M.bfix_dim = static_cast<unsigned>(eig.size());
      out.push_back(std::move(M));
    }
  }
  require(dim_check == N, "decompose_induced: constituent dimensions do not sum to dim Ind");
  return out;
}

// Model of an arbitrary irreducible from its character row: one copy is cut
// from the regular module by projecting with the central idempotent and a
// rank-one cyclic-subgroup character idempotent, then spinning.
inline IrreducibleModel model_from_character(const FiniteGroup& G, const CharacterTable& table,
                                             unsigned lam) {
  unsigned n = table.conductor();
  unsigned d = table.degree(lam);
  GroupAlgebraElement c = table.central_idempotent(lam);

  auto spin = [&](const GroupAlgebraElement& seed) {
    RowSpan span(G.order());
    std::vector<CVec> frontier;
    CVec v0(G.order());
    for (auto& [g, val] : seed.terms()) v0[g] = val;
    if (span.add(v0)) frontier.push_back(v0);
    while (!frontier.empty() && span.dimension() <= d) {
      std::vector<CVec> next;
      for (const CVec& v : frontier) {
        for (gidx g = 0; g < G.order(); ++g) {
          // left translation by g permutes coordinates: (delta_g * f)(x) = f(g^{-1} x)
          CVec img(G.order());
          for (gidx x = 0; x < G.order(); ++x)
            if (!v[x].is_zero()) img[G.mul(g, x)] = v[x];
          if (span.add(img)) next.push_back(std::move(img));
          if (span.dimension() > d) break;
        }
        if (span.dimension() > d) break;
      }
      frontier = std::move(next);
    }
    return span;
  };

  // search cyclic subgroups J = <g> and characters psi of J for a rank-one
  // cut: the seed c * e_{J, psi} spins to a single irreducible copy
  for (unsigned cls = 0; cls < G.num_classes(); ++cls) {
    gidx g = G.conjugacy_classes()[cls][0];
    unsigned o = G.element_order(g);
    for (unsigned kpow = 0; kpow < o; ++kpow) {
      GroupAlgebraElement ej(G);
      gidx gj = G.identity();
      for (unsigned t = 0; t < o; ++t) {
        // psi(g^t) = zeta_o^{k t}; use psi(j^{-1}) for the isotype projector
        CycloScalar val = CycloScalar::root_of_unity(n, -static_cast<long long>(n / o) *
                                                            static_cast<long long>(kpow) * t);
        ej.add_term(gj, CycloScalar(Rational(1, o)) * val);
        gj = G.mul(gj, g);
      }
      GroupAlgebraElement seed = convolve(c, ej);
      if (seed.is_zero()) continue;
      RowSpan span = spin(seed);
      if (span.dimension() != d) continue;
      std::vector<CVec> basis(span.rref_rows().begin(), span.rref_rows().end());
      auto act = [&](gidx h, const CVec& v) {
        CVec img(G.order());
        for (gidx x = 0; x < G.order(); ++x)
          if (!v[x].is_zero()) img[G.mul(h, x)] = v[x];
        return img;
      };
      IrreducibleModel M = detail::model_from_invariant_subspace(G, act, basis);
      if (M.char_by_class != table.row(lam)) continue;
      M.table_index = static_cast<int>(lam);
      return M;
    }
  }
  fail("model_from_character: no rank-one cyclic cut found for this irreducible");
}

// Complete list of irreducible models (sum deg^2 = |G|), for the Fourier
// separation oracle.
inline std::vector<IrreducibleModel> complete_model_list(const FiniteGroup& G,
                                                         const CharacterTable& table) {
  std::vector<IrreducibleModel> out;
  for (unsigned i = 0; i < table.num_irreducibles(); ++i) out.push_back(model_from_character(G, table, i));
  return out;
}

// Linear character of a subgroup as a degree-one model carried on the
// subgroup; its matrix coefficients extend by zero to the ambient group.
inline IrreducibleModel linear_model_on_subgroup(const FiniteGroup& G, std::vector<gidx> subgroup,
                                                 const std::map<gidx, CycloScalar>& values) {
  std::sort(subgroup.begin(), subgroup.end());
  IrreducibleModel M;
  M.G = &G;
  M.carrier = subgroup;
  M.deg = 1;
  M.gram = Matrix::identity(1);
  for (gidx s : M.carrier) {
    auto it = values.find(s);
    require(it != values.end(), "linear_model_on_subgroup: missing character value");
    Matrix m(1, 1);
    m.at(0, 0) = it->second;
    M.rho.push_back(std::move(m));
  }
  return M;
}

// Matrix coefficient m_{u,v}(k) = <u, rho(k) v>, extended by zero off the
// carrier.
struct MatrixCoefficient {
  const IrreducibleModel* model = nullptr;
  CVec u, v;
  GroupAlgebraElement elt;
};

inline MatrixCoefficient matrix_coefficient(const IrreducibleModel& M, CVec u, CVec v) {
  require(u.size() == M.deg && v.size() == M.deg, "matrix_coefficient: vector size mismatch");
  MatrixCoefficient out;
  out.model = &M;
  out.u = u;
  out.v = v;
  out.elt = GroupAlgebraElement(*M.G);
  if (M.full_group()) {
    for (gidx g = 0; g < M.G->order(); ++g) out.elt.add_term(g, M.form(u, M.rho[g] * v));
  } else {
    for (std::size_t i = 0; i < M.carrier.size(); ++i)
      out.elt.add_term(M.carrier[i], M.form(u, M.rho[i] * v));
  }
  return out;
}

// Convolution of two matrix coefficients by the Schur orthogonality formula:
// zero for inequivalent models, and (|K|/deg) conj(<x2,y1>) m_{x1,y2} for a
// shared model.
inline GroupAlgebraElement schur_convolve(const MatrixCoefficient& a, const MatrixCoefficient& b) {
  require(a.model && b.model && a.model->G == b.model->G, "schur_convolve: ambient group mismatch");
  const IrreducibleModel& A = *a.model;
  const IrreducibleModel& B = *b.model;
  bool same = (&A == &B) || A.structurally_equal(B);
  if (!same) {
    bool equivalent = A.carrier == B.carrier && A.deg == B.deg &&
                      (A.full_group() && B.full_group() && A.table_index >= 0 &&
                       A.table_index == B.table_index);
    require(!equivalent,
            "schur_convolve: equivalent but distinct models (the convention requires equal models)");
    return GroupAlgebraElement(*A.G);
  }
  require(A.carrier_size() == A.G->order() || !A.carrier.empty(),
          "schur_convolve: carrier bookkeeping broken");
  CycloScalar meas(static_cast<long long>(A.carrier_size()));
  CycloScalar c = meas * CycloScalar(Rational(1, A.deg)) * A.form(a.v, b.u).conj();
  MatrixCoefficient mixed = matrix_coefficient(A, a.u, b.v);
  return c * mixed.elt;
}

// Gram-Schmidt orthogonal (not normalized) basis of the model space under its
// invariant form, with the exact norms <v_i, v_i>.
inline std::pair<std::vector<CVec>, std::vector<CycloScalar>> orthogonal_basis(
    const IrreducibleModel& M) {
  std::vector<CVec> vs;
  std::vector<CycloScalar> norms;
  for (unsigned i = 0; i < M.deg; ++i) {
    CVec v(M.deg);
    v[i] = CycloScalar(1);
    for (std::size_t j = 0; j < vs.size(); ++j) {
      CycloScalar coeff = M.form(vs[j], v) / norms[j];
      for (unsigned t = 0; t < M.deg; ++t) v[t] -= coeff * vs[j][t];
    }
    CycloScalar n2 = M.form(v, v);
    require(!n2.is_zero(), "orthogonal_basis: degenerate form");
    vs.push_back(std::move(v));
    norms.push_back(n2);
  }
  return {vs, norms};
}

// Scale-dressed diagonal coefficient (deg / (|K| <v,v>)) m_{v,v}; an exact
// convolution idempotent regardless of whether <v,v> is a perfect square.
inline GroupAlgebraElement normalized_diagonal_coefficient(const IrreducibleModel& M, const CVec& v) {
  CycloScalar c = M.form(v, v);
  require(!c.is_zero(), "normalized_diagonal_coefficient: isotropic vector");
  CycloScalar scale = CycloScalar(Rational(M.deg, 1)) *
                      CycloScalar(Rational(1, static_cast<long long>(M.carrier_size()))) / c;
  return scale * matrix_coefficient(M, v, v).elt;
}

// Basis data used by the block decomposition and by the involution machinery.
struct ModelBasis {
  const IrreducibleModel* model = nullptr;
  std::vector<CVec> vectors;
  std::vector<CycloScalar> norms;
};

struct BlockDecomposition {
  // key: (sigma index, i, tau index, j)
  std::map<std::array<unsigned, 4>, GroupAlgebraElement> blocks;
  GroupAlgebraElement resum;
};

// f_{sigma,i,tau,j} = mhat_{v_i,v_i} * f * mhat_{w_j,w_j}; the blocks re-sum
// to f exactly when f lies in the corner e * CG * e.
inline BlockDecomposition block_decompose(const GroupAlgebraElement& f,
                                          const std::vector<ModelBasis>& bases) {
  BlockDecomposition out;
  require(!bases.empty(), "block_decompose: no models");
  const FiniteGroup& G = *bases[0].model->G;
  out.resum = GroupAlgebraElement(G);
  std::vector<std::vector<GroupAlgebraElement>> mhat(bases.size());
  for (unsigned s = 0; s < bases.size(); ++s) {
    for (unsigned i = 0; i < bases[s].vectors.size(); ++i) {
      GroupAlgebraElement m = normalized_diagonal_coefficient(*bases[s].model, bases[s].vectors[i]);
      require(convolve(m, m) == m, "block_decompose: basis vector fails the normalization check");
      mhat[s].push_back(std::move(m));
    }
  }
  for (unsigned s = 0; s < bases.size(); ++s)
    for (unsigned i = 0; i < mhat[s].size(); ++i)
      for (unsigned t = 0; t < bases.size(); ++t)
        for (unsigned j = 0; j < mhat[t].size(); ++j) {
          GroupAlgebraElement block = convolve(mhat[s][i], convolve(f, mhat[t][j]));
          out.resum = out.resum + block;
          if (!block.is_zero()) out.blocks[{s, i, t, j}] = std::move(block);
        }
  return out;
}

} // namespace hecke
