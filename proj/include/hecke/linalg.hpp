#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hecke/cyclotomic.hpp"
#include "hecke/error.hpp"
#include "hecke/real_sign.hpp"

namespace hecke {

using CVec = std::vector<CycloScalar>;

// Dense matrix over Q(zeta_n). Sizes here stay small (<= a few hundred), so
// plain Gaussian elimination with exact field arithmetic is the workhorse.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycloScalar::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  CycloScalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const CycloScalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  CVec row(std::size_t i) const {
    CVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
  }

  CVec col(std::size_t j) const {
    CVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

  void set_row(std::size_t i, const CVec& v) {
    require(v.size() == cols_, "Matrix::set_row size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
  }

  bool is_zero() const {
    for (const CycloScalar& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.a_.size(); ++k)
      if (a.a_[k] != b.a_[k]) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "Matrix: shape mismatch in +");
    Matrix out = a;
    for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] += b.a_[k];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "Matrix: shape mismatch in -");
    Matrix out = a;
    for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] -= b.a_[k];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "Matrix: shape mismatch in *");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const CycloScalar& v = a.at(i, k);
        if (v.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b.at(k, j).is_zero()) continue;
          out.at(i, j) += v * b.at(k, j);
        }
      }
    return out;
  }

  friend Matrix operator*(const CycloScalar& s, const Matrix& m) {
    Matrix out = m;
    for (CycloScalar& x : out.a_) x *= s;
    return out;
  }

  friend CVec operator*(const Matrix& m, const CVec& v) {
    require(v.size() == m.cols_, "Matrix: shape mismatch in M*v");
    CVec out(m.rows_);
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j)
        if (!m.at(i, j).is_zero()) out[i] += m.at(i, j) * v[j];
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  Matrix conj_transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).conj();
    return out;
  }

  CycloScalar trace() const {
    require(rows_ == cols_, "Matrix: trace of non-square");
    CycloScalar t;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t sel = rows_;
      for (std::size_t i = r; i < rows_; ++i)
        if (!at(i, c).is_zero()) { sel = i; break; }
      if (sel == rows_) continue;
      if (sel != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
      CycloScalar inv = at(r, c).inverse();
      for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || at(i, c).is_zero()) continue;
        CycloScalar f = at(i, c);
        for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  CycloScalar determinant() const {
    require(rows_ == cols_, "Matrix: determinant of non-square");
    Matrix m = *this;
    CycloScalar det = CycloScalar::one();
    for (std::size_t c = 0; c < m.cols_; ++c) {
      std::size_t sel = m.rows_;
      for (std::size_t i = c; i < m.rows_; ++i)
        if (!m.at(i, c).is_zero()) { sel = i; break; }
      if (sel == m.rows_) return CycloScalar();
      if (sel != c) {
        for (std::size_t j = 0; j < m.cols_; ++j) std::swap(m.at(sel, j), m.at(c, j));
        det = -det;
      }
      det *= m.at(c, c);
      CycloScalar inv = m.at(c, c).inverse();
      for (std::size_t i = c + 1; i < m.rows_; ++i) {
        if (m.at(i, c).is_zero()) continue;
        CycloScalar f = m.at(i, c) * inv;
        for (std::size_t j = c; j < m.cols_; ++j) m.at(i, j) -= f * m.at(c, j);
      }
    }
    return det;
  }

  std::optional<Matrix> inverse() const {
    require(rows_ == cols_, "Matrix: inverse of non-square");
    Matrix aug(rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_ + i) = CycloScalar::one();
    }
    auto pivots = aug.rref();
    if (pivots.size() != rows_ || pivots.back() >= cols_) return std::nullopt;
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = aug.at(i, cols_ + j);
    return out;
  }

  // Basis of the right kernel {x : A x = 0}.
  std::vector<CVec> kernel_basis() const {
    Matrix m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<CVec> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      CVec v(cols_);
      v[f] = CycloScalar::one();
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

private:
  std::size_t rows_, cols_;
  std::vector<CycloScalar> a_;
};

// Solve A x = b exactly (free variables set to zero); nullopt when
// inconsistent.
inline std::optional<CVec> solve(const Matrix& A, const CVec& b) {
  require(b.size() == A.rows(), "solve: shape mismatch");
  Matrix aug(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols()) = b[i];
  }
  auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;
  CVec x(A.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, A.cols());
  return x;
}

// Incremental row span with RREF reduction; used for basis extraction and
// membership tests of exact subspaces.
class RowSpan {
public:
  explicit RowSpan(std::size_t cols) : cols_(cols) {}

  std::size_t dimension() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<CVec>& rref_rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Reduce v against the current rows; the residual is zero iff v lies in
  // the span.
  CVec reduce(CVec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const CycloScalar& c = v[pivots_[r]];
      if (c.is_zero()) continue;
      CycloScalar f = c;
      for (std::size_t j = 0; j < cols_; ++j) v[j] -= f * rows_[r][j];
    }
    return v;
  }

  bool contains(const CVec& v) const {
    CVec r = reduce(v);
    for (const CycloScalar& x : r)
      if (!x.is_zero()) return false;
    return true;
  }

  // Returns true when v enlarged the span.
  bool add(const CVec& v) {
    require(v.size() == cols_, "RowSpan: size mismatch");
    CVec r = reduce(v);
    std::size_t p = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!r[j].is_zero()) { p = j; break; }
    if (p == cols_) return false;
    CycloScalar inv = r[p].inverse();
    for (std::size_t j = 0; j < cols_; ++j) r[j] *= inv;
    // back-substitute into existing rows to keep full RREF
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      CycloScalar f = rows_[i][p];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < cols_; ++j) rows_[i][j] -= f * r[j];
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(r));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
  }

private:
  std::size_t cols_;
  std::vector<CVec> rows_;
  std::vector<std::size_t> pivots_;
};

// Coordinates of v in the given (independent) spanning vectors: x with
// sum_i x_i basis[i] = v.
inline std::optional<CVec> coordinates_in(const std::vector<CVec>& basis, const CVec& v) {
  if (basis.empty()) return std::nullopt;
  std::size_t n = basis[0].size();
  Matrix A(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) A.at(i, j) = basis[j][i];
  CVec b = v;
  auto x = solve(A, b);
  if (!x) return std::nullopt;
  // confirm consistency (solve() zeroes free variables, so re-check)
  CVec check(n);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) check[i] += (*x)[j] * basis[j][i];
  for (std::size_t i = 0; i < n; ++i)
    if (check[i] != v[i]) return std::nullopt;
  return x;
}

// Hermitian inner product sum_i conj(u_i) v_i (conjugate-linear in the first
// slot).
inline CycloScalar hermitian_dot(const CVec& u, const CVec& v) {
  require(u.size() == v.size(), "hermitian_dot: size mismatch");
  CycloScalar s;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i].conj() * v[i];
  return s;
}

inline bool is_hermitian(const Matrix& g) { return g == g.conj_transpose(); }

// Positive definiteness of a Hermitian Gram matrix by exact leading
// principal minor signs.
inline bool is_positive_definite(const Matrix& g) {
  require(g.rows() == g.cols(), "is_positive_definite: non-square");
  require(is_hermitian(g), "is_positive_definite: matrix is not Hermitian");
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    Matrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead.at(i, j) = g.at(i, j);
    if (real_sign(lead.determinant()) <= 0) return false;
  }
  return true;
}

} // namespace hecke
