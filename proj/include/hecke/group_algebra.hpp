#pragma once

#include <map>
#include <sstream>
#include <string>

#include "hecke/cyclotomic.hpp"
#include "hecke/error.hpp"
#include "hecke/groups.hpp"
#include "hecke/linalg.hpp"

namespace hecke {

// Finitely supported function on a finite group under the counting-measure
// convolution (f * g)(x) = sum_y f(y) g(y^{-1} x). Elements are normalized on
// every operation: zero coefficients never appear in the support map.
class GroupAlgebraElement {
public:
  GroupAlgebraElement() : G_(nullptr) {}
  explicit GroupAlgebraElement(const FiniteGroup& G) : G_(&G) {}

  static GroupAlgebraElement delta(const FiniteGroup& G, gidx g,
                                   const CycloScalar& coeff = CycloScalar(1)) {
    GroupAlgebraElement f(G);
    f.add_term(g, coeff);
    return f;
  }

  const FiniteGroup* group() const { return G_; }
  const std::map<gidx, CycloScalar>& terms() const { return c_; }
  std::size_t support_size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }

  CycloScalar coeff(gidx g) const {
    auto it = c_.find(g);
    return it == c_.end() ? CycloScalar() : it->second;
  }

  void add_term(gidx g, const CycloScalar& v) {
    if (v.is_zero()) return;
    auto it = c_.find(g);
    if (it == c_.end()) {
      c_.emplace(g, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  friend GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    require(a.G_ == b.G_, "GroupAlgebraElement: group mismatch");
    GroupAlgebraElement out = a;
    for (auto& [g, v] : b.c_) out.add_term(g, v);
    return out;
  }

  friend GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    require(a.G_ == b.G_, "GroupAlgebraElement: group mismatch");
    GroupAlgebraElement out = a;
    for (auto& [g, v] : b.c_) out.add_term(g, -v);
    return out;
  }

  GroupAlgebraElement operator-() const {
    GroupAlgebraElement out(*G_);
    for (auto& [g, v] : c_) out.c_.emplace(g, -v);
    return out;
  }

  friend GroupAlgebraElement operator*(const CycloScalar& s, const GroupAlgebraElement& f) {
    GroupAlgebraElement out(*f.G_);
    if (s.is_zero()) return out;
    for (auto& [g, v] : f.c_) out.add_term(g, s * v);
    return out;
  }

  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return a.G_ == b.G_ && a.c_ == b.c_;
  }
  friend bool operator!=(const GroupAlgebraElement& a, const GroupAlgebraElement& b) { return !(a == b); }

  // One line "coeff * [matrix]" per support point.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [g, v] : c_) {
      if (!first) os << "\n";
      first = false;
      os << v.to_string() << " * " << G_->matrix_to_string(g);
    }
    return os.str();
  }

private:
  const FiniteGroup* G_;
  std::map<gidx, CycloScalar> c_;
};

inline GroupAlgebraElement convolve(const GroupAlgebraElement& f, const GroupAlgebraElement& g) {
  require(f.group() && f.group() == g.group(), "convolve: group mismatch");
  const FiniteGroup& G = *f.group();
  GroupAlgebraElement out(G);
  // smaller support drives the outer loop
  const GroupAlgebraElement& outer = f.support_size() <= g.support_size() ? f : g;
  const GroupAlgebraElement& inner = f.support_size() <= g.support_size() ? g : f;
  bool outer_is_f = &outer == &f;
  for (auto& [a, u] : outer.terms())
    for (auto& [b, v] : inner.terms()) {
      gidx prod = outer_is_f ? G.mul(a, b) : G.mul(b, a);
      out.add_term(prod, u * v);
    }
  return out;
}

// f^*(g) = conj(f(g^{-1})).
inline GroupAlgebraElement star(const GroupAlgebraElement& f) {
  require(f.group(), "star: empty element");
  GroupAlgebraElement out(*f.group());
  for (auto& [g, v] : f.terms()) out.add_term(f.group()->inv(g), v.conj());
  return out;
}

// e_J = (1/|J|) 1_J under counting measure; satisfies e_J * e_J = e_J and
// e_J^* = e_J.
inline GroupAlgebraElement subgroup_idempotent(const FiniteGroup& G, const std::vector<gidx>& J) {
  require(G.is_subgroup(J), "subgroup_idempotent: J is not a verified subgroup");
  GroupAlgebraElement out(G);
  CycloScalar w(Rational(1, static_cast<long long>(J.size())));
  for (gidx j : J) out.add_term(j, w);
  return out;
}

// Operator Fourier separation: f = g iff pi(f) = pi(g) for every irreducible
// pi. `reps` must be a complete list of inequivalent irreducible models
// (checked through sum deg^2 = |G|). Models need degree() and matrix(g).
template <class ModelList>
bool operator_fourier_separation(const GroupAlgebraElement& f, const GroupAlgebraElement& g,
                                 const ModelList& reps) {
  require(f.group() && f.group() == g.group(), "operator_fourier_separation: group mismatch");
  const FiniteGroup& G = *f.group();
  std::size_t degsum = 0;
  for (const auto& m : reps) degsum += static_cast<std::size_t>(m.degree()) * m.degree();
  require(degsum == G.order(),
          "operator_fourier_separation: incomplete irreducible list (sum deg^2 != |G|)");
  GroupAlgebraElement diff = f - g;
  if (diff.is_zero()) return true;
  for (const auto& m : reps) {
    Matrix acc(m.degree(), m.degree());
    for (auto& [x, v] : diff.terms()) acc = acc + v * m.matrix(x);
    if (!acc.is_zero()) return false;
  }
  return true;
}

} // namespace hecke
