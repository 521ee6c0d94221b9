#pragma once

#include <optional>
#include <vector>

#include "hecke/group_algebra.hpp"
#include "hecke/linalg.hpp"

namespace hecke {

// Corner space e * CG * f with an explicit basis obtained by exact row
// reduction of {e * delta_g * f : g in G}. When e = f the corner is an
// algebra and structure constants are available.
class CornerAlgebra {
public:
  CornerAlgebra() = default;

  CornerAlgebra(const GroupAlgebraElement& e, const GroupAlgebraElement& f) : e_(e), f_(f) {
    require(e.group() && e.group() == f.group(), "CornerAlgebra: idempotents over different groups");
    G_ = e.group();
    require(convolve(e_, e_) == e_ && convolve(f_, f_) == f_,
            "CornerAlgebra: inputs must be idempotents");
    RowSpan span(G_->order());
    for (gidx g = 0; g < G_->order(); ++g) {
      GroupAlgebraElement x = convolve(e_, convolve(GroupAlgebraElement::delta(*G_, g), f_));
      span.add(to_vec(x));
    }
    for (const CVec& row : span.rref_rows()) basis_.push_back(from_vec(row));
    pivots_ = span.pivots();
    if (e_ == f_) {
      identity_coords_ = coordinates(e_);
      require(identity_coords_.has_value(), "CornerAlgebra: unit does not lie in the corner");
      structure_.resize(basis_.size());
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        structure_[i] = Matrix(basis_.size(), basis_.size());
        for (std::size_t j = 0; j < basis_.size(); ++j) {
          auto c = coordinates(convolve(basis_[i], basis_[j]));
          require(c.has_value(), "CornerAlgebra: product left the corner");
          for (std::size_t k = 0; k < basis_.size(); ++k) structure_[i].at(j, k) = (*c)[k];
        }
      }
    }
  }

  const FiniteGroup& group() const { return *G_; }
  const GroupAlgebraElement& left_idempotent() const { return e_; }
  const GroupAlgebraElement& right_idempotent() const { return f_; }
  const std::vector<GroupAlgebraElement>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  bool is_algebra() const { return e_ == f_; }

  // coordinates of x in the basis; nullopt if x is outside the corner
  std::optional<CVec> coordinates(const GroupAlgebraElement& x) const {
    // the basis rows are in RREF, so coordinates are read off at the pivots
    // and validated by re-expansion
    CVec v = to_vec(x);
    CVec coords(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) coords[i] = v[pivots_[i]];
    CVec check(G_->order());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (coords[i].is_zero()) continue;
      for (auto& [g, c] : basis_[i].terms()) check[g] += coords[i] * c;
    }
    if (check != v) return std::nullopt;
    return coords;
  }

  bool contains(const GroupAlgebraElement& x) const { return coordinates(x).has_value(); }

  GroupAlgebraElement from_coords(const CVec& c) const {
    require(c.size() == basis_.size(), "CornerAlgebra: coordinate size mismatch");
    GroupAlgebraElement out(*G_);
    for (std::size_t i = 0; i < basis_.size(); ++i) out = out + c[i] * basis_[i];
    return out;
  }

  const GroupAlgebraElement& identity_element() const {
    require(is_algebra(), "CornerAlgebra: identity only for e = f corners");
    return e_;
  }

  // structure constants: basis_i * basis_j = sum_k structure_[i](j,k) basis_k
  const Matrix& left_multiplication(std::size_t i) const {
    require(is_algebra(), "CornerAlgebra: structure constants only for e = f corners");
    return structure_[i];
  }

  // Basis of the center as coordinate vectors: x with x b_j = b_j x for all j.
  std::vector<CVec> center_coords() const {
    require(is_algebra(), "CornerAlgebra: center only for e = f corners");
    std::size_t k = basis_.size();
    // constraints: for all j: sum_i x_i (b_i b_j - b_j b_i) = 0
    Matrix sys(k * k, k);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        // coords of b_i b_j and b_j b_i
        for (std::size_t t = 0; t < k; ++t) {
          CycloScalar diff = structure_[i].at(j, t) - structure_[j].at(i, t);
          sys.at(j * k + t, i) = diff;
        }
      }
    }
    return sys.kernel_basis();
  }

  bool is_central_element(const GroupAlgebraElement& z) const {
    for (const GroupAlgebraElement& b : basis_)
      if (convolve(z, b) != convolve(b, z)) return false;
    return true;
  }

private:
  CVec to_vec(const GroupAlgebraElement& x) const {
    CVec v(G_->order());
    for (auto& [g, c] : x.terms()) v[g] = c;
    return v;
  }

  GroupAlgebraElement from_vec(const CVec& v) const {
    GroupAlgebraElement out(*G_);
    for (gidx g = 0; g < v.size(); ++g) out.add_term(g, v[g]);
    return out;
  }

  const FiniteGroup* G_ = nullptr;
  GroupAlgebraElement e_, f_;
  std::vector<GroupAlgebraElement> basis_;
  std::vector<std::size_t> pivots_;
  std::optional<CVec> identity_coords_;
  std::vector<Matrix> structure_;
};

} // namespace hecke
