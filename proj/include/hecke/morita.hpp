#pragma once

#include <optional>
#include <set>
#include <vector>

#include "hecke/corner.hpp"
#include "hecke/idempotents.hpp"
#include "hecke/reps.hpp"

namespace hecke {

// Witness data for e_big in H_big * e_small * H_big: explicit a_i, b_i with
// sum a_i * b_i = e_big, plus the self-adjoint form
// e_big = sum_j scale_j (b_j * b_j^*) with positive totally real scales.
struct FullIdempotentCertificate {
  GroupAlgebraElement e_big, e_small;
  std::vector<GroupAlgebraElement> a, b;  // sum a_i * b_i = e_big
  std::vector<GroupAlgebraElement> sa_witness;
  std::vector<CycloScalar> sa_scale;      // e_big = sum scale_j w_j * w_j^*
};

inline bool verify_certificate(const FullIdempotentCertificate& c) {
  require(c.a.size() == c.b.size(), "certificate: witness list size mismatch");
  const FiniteGroup& G = *c.e_big.group();
  GroupAlgebraElement sum(G);
  for (std::size_t i = 0; i < c.a.size(); ++i) sum = sum + convolve(c.a[i], c.b[i]);
  if (sum != c.e_big) return false;
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    // membership in the bimodules
    if (convolve(c.e_big, convolve(c.a[i], c.e_small)) != c.a[i]) return false;
    if (convolve(c.e_small, convolve(c.b[i], c.e_big)) != c.b[i]) return false;
  }
  GroupAlgebraElement sasum(G);
  for (std::size_t j = 0; j < c.sa_witness.size(); ++j)
    sasum = sasum + c.sa_scale[j] * convolve(c.sa_witness[j], star(c.sa_witness[j]));
  return sasum == c.e_big;
}

// Build the certificate from matrix coefficients m_{u_k, v}: per constituent,
// b_k * b_k^* recovers the diagonal coefficients, and the block sums give
// e_Xi. `variant` selects an independent construction (reversed basis order
// and a rescaled eigenvector) for the certificate-independence checks.
inline FullIdempotentCertificate certify_full_idempotent(
    const std::vector<IrreducibleModel>& xi_models, const SubgroupChain& chain,
    const TorusCharacter& chi, unsigned conductor, const GroupAlgebraElement& e_big,
    const GroupAlgebraElement& e_small, int variant = 0) {
  FullIdempotentCertificate cert;
  cert.e_big = e_big;
  cert.e_small = e_small;

  std::set<int> done;
  for (const IrreducibleModel& M : xi_models) {
    if (!done.insert(M.table_index).second) continue;
    auto eig = chi_eigenspace(M, chain, chi, conductor);
    require(!eig.empty(), "certify_full_idempotent: constituent without eigenvector");
    CVec v = eig[0];
    if (variant == 1) {
      // rescale the eigenvector; the summed identity is scale-free
      CycloScalar unit = conductor > 1 ? CycloScalar(2) + CycloScalar::root_of_unity(conductor, 1)
                                       : CycloScalar(2);
      for (auto& x : v) x *= unit;
    }
    auto [us, norms] = orthogonal_basis(M);
    if (variant == 1) {
      std::reverse(us.begin(), us.end());
      std::reverse(norms.begin(), norms.end());
    }
    CycloScalar cv = M.form(v, v);
    CycloScalar meas(static_cast<long long>(M.carrier_size()));
    CycloScalar deg(static_cast<long long>(M.deg));
    for (unsigned k = 0; k < us.size(); ++k) {
      GroupAlgebraElement w = matrix_coefficient(M, us[k], v).elt;
      CycloScalar scale = deg * deg / (meas * meas * norms[k] * cv);
      cert.sa_witness.push_back(w);
      cert.sa_scale.push_back(scale);
      cert.a.push_back(scale * w);
      cert.b.push_back(star(w));
    }
  }
  require(verify_certificate(cert), "certify_full_idempotent: certificate verification failed");
  return cert;
}

// Trivial certificate for small = big.
inline FullIdempotentCertificate trivial_certificate(const GroupAlgebraElement& e) {
  FullIdempotentCertificate c;
  c.e_big = e;
  c.e_small = e;
  c.a = {e};
  c.b = {e};
  c.sa_witness = {e};
  c.sa_scale = {CycloScalar(1)};
  require(verify_certificate(c), "trivial_certificate: verification failed");
  return c;
}

// Finite-dimensional module over a corner algebra, with one action matrix per
// basis element.
struct FiniteModule {
  const CornerAlgebra* A = nullptr;
  unsigned dim = 0;
  std::vector<Matrix> action;

  void verify() const {
    require(A && A->is_algebra(), "FiniteModule: underlying corner is not an algebra");
    require(action.size() == A->dimension(), "FiniteModule: one action matrix per basis element");
    // identity idempotent acts as the identity
    auto idc = A->coordinates(A->identity_element());
    require(idc.has_value(), "FiniteModule: identity not in the corner");
    Matrix id(dim, dim);
    for (std::size_t k = 0; k < action.size(); ++k) id = id + (*idc)[k] * action[k];
    require(id == Matrix::identity(dim), "FiniteModule: identity does not act as identity");
    // structure constants
    for (std::size_t i = 0; i < action.size(); ++i)
      for (std::size_t j = 0; j < action.size(); ++j) {
        Matrix lhs = action[i] * action[j];
        Matrix rhs(dim, dim);
        for (std::size_t k = 0; k < action.size(); ++k)
          rhs = rhs + A->left_multiplication(i).at(j, k) * action[k];
        require(lhs == rhs, "FiniteModule: action violates the structure constants");
      }
  }

  Matrix act(const CVec& coords) const {
    Matrix out(dim, dim);
    for (std::size_t k = 0; k < action.size(); ++k)
      if (!coords[k].is_zero()) out = out + coords[k] * action[k];
    return out;
  }
};

inline FiniteModule regular_module(const CornerAlgebra& A) {
  FiniteModule X;
  X.A = &A;
  X.dim = static_cast<unsigned>(A.dimension());
  for (std::size_t i = 0; i < A.dimension(); ++i) {
    Matrix m(X.dim, X.dim);
    for (std::size_t j = 0; j < A.dimension(); ++j)
      for (std::size_t k = 0; k < A.dimension(); ++k) m.at(k, j) = A.left_multiplication(i).at(j, k);
    X.action.push_back(std::move(m));
  }
  X.verify();
  return X;
}

// Simple module of the corner algebra cut from a full-group model: the image
// of pi(e) with the restricted action of the corner basis.
inline FiniteModule simple_module_from_model(const CornerAlgebra& A, const IrreducibleModel& M) {
  Matrix pe = operator_image(A.left_idempotent(), M);
  RowSpan span(M.deg);
  for (unsigned j = 0; j < M.deg; ++j) span.add(pe.col(j));
  require(span.dimension() > 0, "simple_module_from_model: idempotent kills the model");
  std::vector<CVec> basis(span.rref_rows().begin(), span.rref_rows().end());
  detail::BasisFactor f = detail::factor_basis(basis);
  FiniteModule X;
  X.A = &A;
  X.dim = static_cast<unsigned>(basis.size());
  for (const GroupAlgebraElement& b : A.basis()) {
    Matrix ob = operator_image(b, M);
    Matrix m(X.dim, X.dim);
    for (unsigned j = 0; j < X.dim; ++j) {
      CVec img = ob * basis[j];
      CVec coords = detail::coordinates(f, img);
      for (unsigned i = 0; i < X.dim; ++i) m.at(i, j) = coords[i];
    }
    X.action.push_back(std::move(m));
  }
  X.verify();
  return X;
}

// Space of intertwiners Phi with Phi rho_X(h) = rho_Y(h) Phi.
inline std::vector<Matrix> intertwiner_space(const FiniteModule& X, const FiniteModule& Y) {
  require(X.A == Y.A, "intertwiner_space: modules over different algebras");
  std::size_t nx = X.dim, ny = Y.dim;
  std::size_t vars = nx * ny;
  Matrix sys(X.action.size() * vars, vars);
  std::size_t row = 0;
  for (std::size_t h = 0; h < X.action.size(); ++h) {
    // (Phi Xh - Yh Phi)(i,j) = sum_k Phi(i,k) Xh(k,j) - Yh(i,k) Phi(k,j)
    for (std::size_t i = 0; i < ny; ++i)
      for (std::size_t j = 0; j < nx; ++j) {
        for (std::size_t k = 0; k < nx; ++k) sys.at(row, i * nx + k) += X.action[h].at(k, j);
        for (std::size_t k = 0; k < ny; ++k) sys.at(row, k * nx + j) -= Y.action[h].at(i, k);
        ++row;
      }
  }
  std::vector<Matrix> out;
  for (const CVec& v : sys.kernel_basis()) {
    Matrix phi(ny, nx);
    for (std::size_t i = 0; i < ny; ++i)
      for (std::size_t j = 0; j < nx; ++j) phi.at(i, j) = v[i * nx + j];
    out.push_back(std::move(phi));
  }
  return out;
}

// An explicit invertible intertwiner, when the modules are isomorphic.
inline std::optional<Matrix> invertible_intertwiner(const FiniteModule& X, const FiniteModule& Y) {
  if (X.dim != Y.dim) return std::nullopt;
  std::vector<Matrix> space = intertwiner_space(X, Y);
  // deterministic search: basis elements, then prefix sums
  for (const Matrix& phi : space)
    if (phi.inverse().has_value()) return phi;
  Matrix acc(Y.dim, X.dim);
  for (const Matrix& phi : space) {
    acc = acc + phi;
    if (acc.inverse().has_value()) return acc;
  }
  // small integer combinations as a fallback
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i + 1; j < space.size(); ++j)
      for (long long c = 2; c <= 4; ++c) {
        Matrix cand = space[i] + CycloScalar(c) * space[j];
        if (cand.inverse().has_value()) return cand;
      }
  return std::nullopt;
}

// Tensor transport M (x)_{H_source} X along the bimodule corner
// bim = e_target * CG * e_source: quotient of bim (x) X by the balancing
// relations, with the induced left action of H_target.
inline FiniteModule tensor_transport(const CornerAlgebra& target, const CornerAlgebra& source,
                                     const CornerAlgebra& bim, const FiniteModule& X) {
  require(X.A == &source, "tensor_transport: module is not over the source algebra");
  std::size_t t = bim.dimension(), x = X.dim;
  std::size_t N = t * x;

  RowSpan relations(N);
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t j = 0; j < source.dimension(); ++j) {
      auto mh = bim.coordinates(convolve(bim.basis()[a], source.basis()[j]));
      require(mh.has_value(), "tensor_transport: bimodule not right-stable");
      for (std::size_t l = 0; l < x; ++l) {
        CVec rel(N);
        for (std::size_t s = 0; s < t; ++s) rel[s * x + l] += (*mh)[s];
        for (std::size_t r = 0; r < x; ++r) rel[a * x + r] -= X.action[j].at(r, l);
        relations.add(rel);
      }
    }

  std::vector<bool> is_pivot(N, false);
  for (std::size_t p : relations.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free_pos;
  for (std::size_t i = 0; i < N; ++i)
    if (!is_pivot[i]) free_pos.push_back(i);
  std::size_t q = free_pos.size();

  auto project = [&](const CVec& v) {
    CVec red = relations.reduce(v);
    CVec out(q);
    for (std::size_t i = 0; i < q; ++i) out[i] = red[free_pos[i]];
    return out;
  };

  FiniteModule Y;
  Y.A = &target;
  Y.dim = static_cast<unsigned>(q);
  for (std::size_t u = 0; u < target.dimension(); ++u) {
    Matrix m(q, q);
    // action on the class of the basis vector at each free position
    for (std::size_t col = 0; col < q; ++col) {
      std::size_t a = free_pos[col] / x;
      std::size_t l = free_pos[col] % x;
      auto ua = bim.coordinates(convolve(target.basis()[u], bim.basis()[a]));
      require(ua.has_value(), "tensor_transport: bimodule not left-stable");
      CVec img(N);
      for (std::size_t s = 0; s < t; ++s) img[s * x + l] = (*ua)[s];
      CVec pc = project(img);
      for (std::size_t rr = 0; rr < q; ++rr) m.at(rr, col) = pc[rr];
    }
    Y.action.push_back(std::move(m));
  }
  Y.verify();
  return Y;
}

// Corner-route transport e_source * Y for a module Y over the big algebra:
// the image of the action of e_source with the restricted H_source action.
inline FiniteModule corner_transport(const CornerAlgebra& source, const CornerAlgebra& big,
                                     const FiniteModule& Y) {
  require(Y.A == &big, "corner_transport: module is not over the big algebra");
  auto ec = big.coordinates(source.identity_element());
  require(ec.has_value(), "corner_transport: e_small does not lie in the big corner");
  Matrix pe = Y.act(*ec);
  RowSpan span(Y.dim);
  for (std::size_t j = 0; j < Y.dim; ++j) span.add(pe.col(j));
  std::vector<CVec> basis(span.rref_rows().begin(), span.rref_rows().end());
  FiniteModule X;
  X.A = &source;
  X.dim = static_cast<unsigned>(basis.size());
  if (X.dim == 0) {
    X.action.assign(source.dimension(), Matrix(0, 0));
    return X;
  }
  detail::BasisFactor f = detail::factor_basis(basis);
  for (const GroupAlgebraElement& h : source.basis()) {
    auto hc = big.coordinates(h);
    require(hc.has_value(), "corner_transport: H_source is not inside the big corner");
    Matrix oh = Y.act(*hc);
    Matrix m(X.dim, X.dim);
    for (unsigned j = 0; j < X.dim; ++j) {
      CVec coords = detail::coordinates(f, oh * basis[j]);
      for (unsigned i = 0; i < X.dim; ++i) m.at(i, j) = coords[i];
    }
    X.action.push_back(std::move(m));
  }
  X.verify();
  return X;
}

// span{x * y} = H for the factorization checks.
inline bool bimodule_factorization_check(const CornerAlgebra& H_big, const CornerAlgebra& H_small,
                                         const CornerAlgebra& biml, const CornerAlgebra& bimr) {
  const FiniteGroup& G = H_big.group();
  auto spans_to = [&](const CornerAlgebra& left, const CornerAlgebra& right,
                      const CornerAlgebra& targetAlg) {
    RowSpan span(G.order());
    for (const GroupAlgebraElement& xx : left.basis())
      for (const GroupAlgebraElement& yy : right.basis()) {
        GroupAlgebraElement prod = convolve(xx, yy);
        CVec v(G.order());
        for (auto& [g, c] : prod.terms()) v[g] = c;
        span.add(v);
        require(targetAlg.contains(prod), "bimodule_factorization_check: product leaves the target");
      }
    return span.dimension() == targetAlg.dimension();
  };
  return spans_to(biml, bimr, H_big) && spans_to(bimr, biml, H_small);
}

struct CyclicFgReport {
  bool cyclic_left = false;        // H_big * e_small spans the (big,small) bimodule
  std::size_t generator_count = 0; // greedy generators of the (small,big) bimodule over H_small
  bool finitely_generated = false;
};

inline CyclicFgReport cyclic_and_fg_module_checks(const CornerAlgebra& H_big,
                                                  const CornerAlgebra& H_small,
                                                  const CornerAlgebra& biml,
                                                  const CornerAlgebra& bimr) {
  const FiniteGroup& G = H_big.group();
  CyclicFgReport rep;

  auto to_vec = [&](const GroupAlgebraElement& xx) {
    CVec v(G.order());
    for (auto& [g, c] : xx.terms()) v[g] = c;
    return v;
  };

  // cyclic: span{b * e_small} over the big-algebra basis equals biml
  RowSpan cyc(G.order());
  for (const GroupAlgebraElement& b : H_big.basis())
    cyc.add(to_vec(convolve(b, H_small.identity_element())));
  rep.cyclic_left = cyc.dimension() == biml.dimension();

  // finitely generated: greedy generator extraction for bimr over H_small
  RowSpan span(G.order());
  for (const GroupAlgebraElement& m : bimr.basis()) {
    if (span.contains(to_vec(m))) continue;
    ++rep.generator_count;
    span.add(to_vec(m));
    for (const GroupAlgebraElement& h : H_small.basis()) span.add(to_vec(convolve(h, m)));
  }
  rep.finitely_generated = span.dimension() == bimr.dimension();
  return rep;
}

// Center transfer z -> sum_i a_i * z * b_i along a certificate.
inline GroupAlgebraElement center_transfer(const CornerAlgebra& H_big, const CornerAlgebra& H_small,
                                           const FullIdempotentCertificate& cert,
                                           const GroupAlgebraElement& z) {
  require(H_small.is_central_element(z), "center_transfer: input is not central in H_small");
  GroupAlgebraElement out(H_big.group());
  for (std::size_t i = 0; i < cert.a.size(); ++i)
    out = out + convolve(cert.a[i], convolve(z, cert.b[i]));
  require(H_big.is_central_element(out), "center_transfer: output is not central in H_big");
  return out;
}

} // namespace hecke
