#pragma once

#include <set>
#include <vector>

#include "hecke/corner.hpp"
#include "hecke/morita.hpp"
#include "hecke/real_sign.hpp"
#include "hecke/reps.hpp"
#include "hecke/scenario.hpp"

namespace hecke {

// Conjugate-linear anti-involution of a corner algebra, stored by its action
// matrix on the basis: apply(x) = mat * conj(coords(x)).
struct AntiInvolution {
  const CornerAlgebra* domain = nullptr;
  Matrix mat;

  GroupAlgebraElement apply(const GroupAlgebraElement& x) const {
    auto c = domain->coordinates(x);
    require(c.has_value(), "AntiInvolution: element outside the domain corner");
    CVec cc(c->size());
    for (std::size_t i = 0; i < c->size(); ++i) cc[i] = (*c)[i].conj();
    return domain->from_coords(mat * cc);
  }

  // order two and anti-multiplicativity on all basis pairs
  void verify() const {
    const auto& basis = domain->basis();
    for (const GroupAlgebraElement& b : basis) require(apply(apply(b)) == b, "AntiInvolution: not an involution");
    for (const GroupAlgebraElement& x : basis)
      for (const GroupAlgebraElement& y : basis)
        require(apply(convolve(x, y)) == convolve(apply(y), apply(x)),
                "AntiInvolution: not anti-multiplicative");
  }
};

namespace detail {

inline AntiInvolution involution_from_images(const CornerAlgebra& H,
                                             const std::vector<GroupAlgebraElement>& images) {
  AntiInvolution out;
  out.domain = &H;
  out.mat = Matrix(H.dimension(), H.dimension());
  for (std::size_t j = 0; j < H.dimension(); ++j) {
    auto c = H.coordinates(images[j]);
    require(c.has_value(), "involution: image left the corner");
    for (std::size_t i = 0; i < H.dimension(); ++i) out.mat.at(i, j) = (*c)[i];
  }
  return out;
}

} // namespace detail

// The * anti-involution restricted to a corner with *-fixed idempotent.
inline AntiInvolution restrict_star(const CornerAlgebra& H) {
  require(star(H.left_idempotent()) == H.left_idempotent() &&
              star(H.right_idempotent()) == H.right_idempotent(),
          "restrict_star: corner idempotent is not star-fixed");
  std::vector<GroupAlgebraElement> images;
  for (const GroupAlgebraElement& b : H.basis()) images.push_back(star(b));
  AntiInvolution out = detail::involution_from_images(H, images);
  out.verify();
  return out;
}

// The group involution a(g) = n0 (g^{-1})^T n0^{-1} pushed to the algebra by
// (a f)(g) = f(a(g)).
inline GroupAlgebraElement a_involution_pushforward(const BuiltGroup& built,
                                                    const GroupAlgebraElement& f) {
  const FiniteGroup& G = *built.group;
  gidx n0 = built.longest_element;
  GroupAlgebraElement out(G);
  for (auto& [g, v] : f.terms()) {
    // find h with a(h) = g, i.e. h = a(g) since a is an involution
    gidx ag = G.mul(G.mul(n0, G.transpose_of(G.inv(g))), G.inv(n0));
    out.add_term(ag, v);
  }
  return out;
}

// T_n = (1/|B|) 1_{B n B} in the finite Hecke algebra.
inline GroupAlgebraElement finite_hecke_T(const BuiltGroup& built, gidx n) {
  const FiniteGroup& G = *built.group;
  const std::vector<gidx>& B = built.chain.B;
  std::set<gidx> coset;
  for (gidx b1 : B) {
    gidx x = G.mul(b1, n);
    for (gidx b2 : B) coset.insert(G.mul(x, b2));
  }
  GroupAlgebraElement out(G);
  CycloScalar w(Rational(1, static_cast<long long>(B.size())));
  for (gidx g : coset) out.add_term(g, w);
  return out;
}

// bullet(y) = T_{n0}^{-1} a(y^*) T_{n0} on the finite Hecke algebra H_B.
inline AntiInvolution bullet_on_finite_hecke(const CornerAlgebra& H_B, const BuiltGroup& built) {
  const FiniteGroup& G = H_B.group();
  GroupAlgebraElement T = finite_hecke_T(built, built.longest_element);
  require(H_B.contains(T), "bullet_on_finite_hecke: T_{n0} is not in H_B");

  // invert T inside H_B through the left-multiplication matrix
  std::size_t k = H_B.dimension();
  Matrix MT(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto c = H_B.coordinates(convolve(T, H_B.basis()[j]));
    require(c.has_value(), "bullet_on_finite_hecke: multiplication left the corner");
    for (std::size_t i = 0; i < k; ++i) MT.at(i, j) = (*c)[i];
  }
  auto idc = H_B.coordinates(H_B.identity_element());
  auto MTinv = MT.inverse();
  require(MTinv.has_value(), "bullet_on_finite_hecke: T_{n0} is not invertible");
  GroupAlgebraElement Tinv = H_B.from_coords(*MTinv * *idc);
  require(convolve(T, Tinv) == H_B.identity_element() && convolve(Tinv, T) == H_B.identity_element(),
          "bullet_on_finite_hecke: inverse verification failed");

  std::vector<GroupAlgebraElement> images;
  for (const GroupAlgebraElement& y : H_B.basis()) {
    GroupAlgebraElement ay = a_involution_pushforward(built, star(y));
    images.push_back(convolve(Tinv, convolve(ay, T)));
  }
  AntiInvolution out = detail::involution_from_images(H_B, images);
  out.verify();
  return out;
}

// Per-constituent data for the extension formula: a (B, chi)-eigenvector u
// with its norm, and an orthogonal basis with norms.
struct ExtensionData {
  const IrreducibleModel* model = nullptr;
  CVec u;
  CycloScalar cu;
  std::vector<CVec> vs;
  std::vector<CycloScalar> cs;
};

inline std::vector<ExtensionData> extension_data(const Scenario& s, int variant = 0) {
  std::vector<ExtensionData> out;
  std::set<int> done;
  for (const IrreducibleModel& M : s.xi) {
    if (!done.insert(M.table_index).second) continue;
    ExtensionData d;
    d.model = &M;
    auto eig = chi_eigenspace(M, s.chain(), s.chi, s.conductor);
    require(eig.size() == 1, "extension_data: expected a one-dimensional eigenvector line");
    d.u = eig[0];
    if (variant == 1) {
      CycloScalar unit = s.conductor > 1
                             ? CycloScalar(1) + CycloScalar(2) * CycloScalar::root_of_unity(s.conductor, 1)
                             : CycloScalar(3);
      for (auto& x : d.u) x *= unit;
    }
    d.cu = M.form(d.u, d.u);
    auto [vs, cs] = orthogonal_basis(M);
    d.vs = vs;
    d.cs = cs;
    out.push_back(std::move(d));
  }
  return out;
}

// Extension of an anti-involution circ of H_sigma to H_Xi through the
// matrix-coefficient sandwich: each block of f is conjugated into H_sigma,
// circ is applied there, and the block is rebuilt with the slots exchanged.
// The normalization scales enter squared, so no square roots are needed.
inline AntiInvolution extend_involution(const CornerAlgebra& H_xi, const CornerAlgebra& H_sigma,
                                        const AntiInvolution& circ_small,
                                        const std::vector<ExtensionData>& data) {
  require(circ_small.domain == &H_sigma, "extend_involution: circ domain mismatch");

  // hypothesis: circ agrees with * on the compactly supported part, which in
  // the finite model is all of H_sigma
  for (const GroupAlgebraElement& h : H_sigma.basis())
    require(circ_small.apply(h) == star(h),
            "extend_involution: hypothesis failed (circ differs from * on the corner)");

  const FiniteGroup& G = H_xi.group();
  auto extended = [&](const GroupAlgebraElement& f) {
    GroupAlgebraElement out(G);
    for (const ExtensionData& ds : data) {
      CycloScalar nu_s(Rational(ds.model->deg, static_cast<long long>(G.order())));
      for (std::size_t i = 0; i < ds.vs.size(); ++i) {
        GroupAlgebraElement m_u_vi = matrix_coefficient(*ds.model, ds.u, ds.vs[i]).elt;
        GroupAlgebraElement m_vi_u = matrix_coefficient(*ds.model, ds.vs[i], ds.u).elt;
        for (const ExtensionData& dt : data) {
          CycloScalar nu_t(Rational(dt.model->deg, static_cast<long long>(G.order())));
          for (std::size_t j = 0; j < dt.vs.size(); ++j) {
            GroupAlgebraElement m_vj_u = matrix_coefficient(*dt.model, dt.vs[j], dt.u).elt;
            GroupAlgebraElement m_u_vj = matrix_coefficient(*dt.model, dt.u, dt.vs[j]).elt;
            GroupAlgebraElement F = convolve(m_u_vi, convolve(f, m_vj_u));
            if (F.is_zero()) continue;
            GroupAlgebraElement Fc = circ_small.apply(F);
            CycloScalar scale = (nu_s * nu_s * nu_t * nu_t) /
                                (ds.cs[i] * ds.cu * dt.cs[j] * dt.cu);
            out = out + scale * convolve(m_vj_u, convolve(Fc, m_u_vi));
          }
        }
      }
    }
    return out;
  };

  std::vector<GroupAlgebraElement> images;
  for (const GroupAlgebraElement& b : H_xi.basis()) images.push_back(extended(b));
  AntiInvolution out = detail::involution_from_images(H_xi, images);
  out.verify();

  // restriction to H_sigma equals the input involution
  for (const GroupAlgebraElement& h : H_sigma.basis())
    require(out.apply(h) == circ_small.apply(h),
            "extend_involution: restriction to the small corner failed");
  return out;
}

// Positivity decomposition of (a, a)_{H_sigma} = a^o * a for a in the
// (Xi, sigma) bimodule: explicit witnesses x_j with positive scales so that
// (a, a) = sum_j s_j x_j^o * x_j, following the self-adjoint certificate.
struct PositivityCertificate {
  std::vector<CycloScalar> scales;
  std::vector<GroupAlgebraElement> witnesses;
  GroupAlgebraElement pairing; // (a, a)
};

inline PositivityCertificate positivity_certificate(const GroupAlgebraElement& a,
                                                    const FullIdempotentCertificate& cert,
                                                    const AntiInvolution& circ_big) {
  require(!cert.sa_witness.empty() || a.is_zero(),
          "positivity_certificate: certificate lacks the self-adjoint form");
  const FiniteGroup& G = *a.group();
  PositivityCertificate out;
  out.pairing = GroupAlgebraElement(G);
  if (a.is_zero()) return out;

  GroupAlgebraElement ao = circ_big.apply(a);
  out.pairing = convolve(ao, a);

  GroupAlgebraElement sum(G);
  for (std::size_t j = 0; j < cert.sa_witness.size(); ++j) {
    GroupAlgebraElement x = convolve(star(cert.sa_witness[j]), a);
    GroupAlgebraElement xo = circ_big.apply(x);
    sum = sum + cert.sa_scale[j] * convolve(xo, x);
    out.scales.push_back(cert.sa_scale[j]);
    out.witnesses.push_back(std::move(x));
  }
  require(sum == out.pairing, "positivity_certificate: decomposition does not re-sum");
  return out;
}

// Module with a circ-invariant Hermitian form. The involution handed to
// verify/transport is the ambient one on H_Xi, whose domain contains every
// corner and bimodule in play.
struct HermitianModule {
  FiniteModule module;
  Matrix gram;

  void verify(const AntiInvolution& circ) const {
    require(gram.rows() == module.dim && gram.cols() == module.dim,
            "HermitianModule: Gram shape mismatch");
    require(is_hermitian(gram), "HermitianModule: form is not Hermitian");
    require(!gram.determinant().is_zero(), "HermitianModule: degenerate form");
    // invariance <rho(h)x, y> = <x, rho(h^o)y>
    for (std::size_t h = 0; h < module.action.size(); ++h) {
      auto hc = module.A->coordinates(circ.apply(module.A->basis()[h]));
      require(hc.has_value(), "HermitianModule: involution image outside the corner");
      Matrix rhs = gram * module.act(*hc);
      Matrix lhs = module.action[h].conj_transpose() * gram;
      require(lhs == rhs, "HermitianModule: form is not circ-invariant");
    }
  }
};

// Transport a Hermitian H_source-module along the bimodule: the form on
// m (x) x is <pi((m_a, m_b)) x, y> with (m_a, m_b) = m_a^o * m_b in H_source.
inline HermitianModule transport_hermitian_form(const CornerAlgebra& target,
                                                const CornerAlgebra& source,
                                                const CornerAlgebra& bim, const HermitianModule& X,
                                                const AntiInvolution& circ_ambient) {
  X.verify(circ_ambient);
  std::size_t t = bim.dimension(), x = X.module.dim;
  std::size_t N = t * x;

  // pairing table (m_a, m_b) in H_source coordinates
  std::vector<std::vector<CVec>> pairing(t, std::vector<CVec>(t));
  for (std::size_t a = 0; a < t; ++a) {
    GroupAlgebraElement mao = circ_ambient.apply(bim.basis()[a]);
    for (std::size_t b = 0; b < t; ++b) {
      auto c = source.coordinates(convolve(mao, bim.basis()[b]));
      require(c.has_value(), "transport_hermitian_form: pairing left the source corner");
      pairing[a][b] = *c;
    }
  }

  Matrix full(N, N);
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = 0; b < t; ++b) {
      // With the conjugate-linear-first-slot convention the descending form
      // is <m_a (x) x_l, m_b (x) x_r> = form(x_l, pi((m_a,m_b)) x_r), i.e.
      // entry (l,r) of G pi.
      Matrix pim = X.module.act(pairing[a][b]);
      Matrix block = X.gram * pim;
      for (std::size_t l = 0; l < x; ++l)
        for (std::size_t r = 0; r < x; ++r) full.at(a * x + l, b * x + r) = block.at(l, r);
    }

  // rebuild the quotient exactly as tensor_transport does
  RowSpan relations(N);
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t j = 0; j < source.dimension(); ++j) {
      auto mh = bim.coordinates(convolve(bim.basis()[a], source.basis()[j]));
      require(mh.has_value(), "transport_hermitian_form: bimodule not right-stable");
      for (std::size_t l = 0; l < x; ++l) {
        CVec rel(N);
        for (std::size_t sidx = 0; sidx < t; ++sidx) rel[sidx * x + l] += (*mh)[sidx];
        for (std::size_t r = 0; r < x; ++r) rel[a * x + r] -= X.module.action[j].at(r, l);
        relations.add(rel);
      }
    }

  // the form must kill the relation space on both sides
  for (const CVec& rel : relations.rref_rows()) {
    CVec left(N), right(N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        left[j] += rel[i].conj() * full.at(i, j);
        right[i] += full.at(i, j) * rel[j];
      }
    for (std::size_t i = 0; i < N; ++i)
      require(left[i].is_zero() && right[i].is_zero(),
              "transport_hermitian_form: form does not descend to the tensor quotient");
  }

  std::vector<bool> is_pivot(N, false);
  for (std::size_t p : relations.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free_pos;
  for (std::size_t i = 0; i < N; ++i)
    if (!is_pivot[i]) free_pos.push_back(i);

  HermitianModule out;
  out.module = tensor_transport(target, source, bim, X.module);
  require(out.module.dim == free_pos.size(), "transport_hermitian_form: quotient dimension mismatch");
  out.gram = Matrix(free_pos.size(), free_pos.size());
  for (std::size_t i = 0; i < free_pos.size(); ++i)
    for (std::size_t j = 0; j < free_pos.size(); ++j)
      out.gram.at(i, j) = full.at(free_pos[i], free_pos[j]);
  out.verify(circ_ambient);
  return out;
}

} // namespace hecke
