#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/cyclotomic.hpp"
#include "hecke/error.hpp"
#include "hecke/finite_field.hpp"

namespace hecke {

using gidx = std::uint32_t;

// Finite group of Lie type at desk scale. Elements are matrices over GF(q)
// interned to dense indices by closure from generators; a full multiplication
// table is kept for small orders and a hash-based oracle is used above that.
class FiniteGroup {
public:
  static constexpr std::size_t kTableThreshold = 2500;
  static constexpr std::size_t kOrderBound = 1000000;

  using Mat = std::array<std::uint8_t, 9>; // row-major, dim*dim entries used

  FiniteGroup(std::string family, unsigned dim, FiniteField field, const std::vector<Mat>& generators)
      : family_(std::move(family)), dim_(dim), field_(std::move(field)) {
    intern(identity_mat());
    std::vector<gidx> frontier{0};
    while (!frontier.empty()) {
      std::vector<gidx> next;
      for (gidx a : frontier) {
        for (const Mat& g : generators) {
          Mat prod = mat_mul(elems_[a], g);
          auto [idx, inserted] = intern(prod);
          if (inserted) next.push_back(idx);
          require(elems_.size() <= kOrderBound, "FiniteGroup: order exceeds the configured bound");
        }
      }
      frontier = std::move(next);
    }

    if (order() <= kTableThreshold) {
      table_.assign(order() * order(), 0);
      for (gidx a = 0; a < order(); ++a)
        for (gidx b = 0; b < order(); ++b) table_[a * order() + b] = lookup(mat_mul(elems_[a], elems_[b]));
    }

    inv_.assign(order(), 0);
    for (gidx a = 0; a < order(); ++a) {
      Mat inv = mat_inverse(elems_[a]);
      inv_[a] = lookup(inv);
    }

    compute_orders_and_classes();
    spot_check_associativity();
  }

  const std::string& family() const { return family_; }
  unsigned matrix_dim() const { return dim_; }
  const FiniteField& field() const { return field_; }
  unsigned q() const { return field_.q(); }

  gidx order() const { return static_cast<gidx>(elems_.size()); }
  gidx identity() const { return 0; }

  gidx mul(gidx a, gidx b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return lookup(mat_mul(elems_[a], elems_[b]));
  }

  gidx inv(gidx a) const { return inv_[a]; }

  gidx conjugate(gidx g, gidx x) const { return mul(mul(g, x), inv_[g]); }

  gidx power(gidx a, long long e) const {
    long long o = element_order_[a];
    e %= o;
    if (e < 0) e += o;
    gidx r = identity();
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  unsigned element_order(gidx a) const { return element_order_[a]; }
  unsigned exponent() const { return exponent_; }

  const std::vector<std::vector<gidx>>& conjugacy_classes() const { return classes_; }
  unsigned class_of(gidx a) const { return class_of_[a]; }
  unsigned num_classes() const { return static_cast<unsigned>(classes_.size()); }

  const Mat& matrix_of(gidx a) const { return elems_[a]; }

  gidx index_of(const Mat& m) const { return lookup(m); }

  // The index of the transposed matrix (groups here are matrix groups, so
  // this is well defined whenever the transpose lies in the group).
  gidx transpose_of(gidx a) const {
    Mat t{};
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned j = 0; j < dim_; ++j) t[j * dim_ + i] = elems_[a][i * dim_ + j];
    return lookup(t);
  }

  bool is_subgroup(const std::vector<gidx>& h) const {
    if (h.empty()) return false;
    std::vector<bool> in(order(), false);
    for (gidx x : h) in[x] = true;
    if (!in[identity()]) return false;
    for (gidx a : h) {
      if (!in[inv_[a]]) return false;
      for (gidx b : h)
        if (!in[mul(a, b)]) return false;
    }
    return true;
  }

  bool is_abelian_subset(const std::vector<gidx>& h) const {
    for (gidx a : h)
      for (gidx b : h)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::string matrix_to_string(gidx a) const {
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < dim_; ++i) {
      os << "[";
      for (unsigned j = 0; j < dim_; ++j) {
        os << static_cast<unsigned>(elems_[a][i * dim_ + j]);
        if (j + 1 < dim_) os << ",";
      }
      os << "]";
      if (i + 1 < dim_) os << ",";
    }
    os << "]";
    return os.str();
  }

  Mat identity_mat() const {
    Mat m{};
    for (unsigned i = 0; i < dim_; ++i) m[i * dim_ + i] = 1;
    return m;
  }

  Mat mat_mul(const Mat& a, const Mat& b) const {
    Mat out{};
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned k = 0; k < dim_; ++k) {
        unsigned v = a[i * dim_ + k];
        if (v == 0) continue;
        for (unsigned j = 0; j < dim_; ++j) {
          unsigned w = b[k * dim_ + j];
          if (w == 0) continue;
          out[i * dim_ + j] =
              static_cast<std::uint8_t>(field_.add(out[i * dim_ + j], field_.mul(v, w)));
        }
      }
    return out;
  }

private:
  static std::uint64_t key_of(const Mat& m, unsigned dim) {
    std::uint64_t k = 0;
    for (unsigned i = 0; i < dim * dim; ++i) k = (k << 3) | m[i];
    return k;
  }

  std::pair<gidx, bool> intern(const Mat& m) {
    std::uint64_t key = key_of(m, dim_);
    auto it = index_.find(key);
    if (it != index_.end()) return {it->second, false};
    gidx idx = static_cast<gidx>(elems_.size());
    elems_.push_back(m);
    index_.emplace(key, idx);
    return {idx, true};
  }

  gidx lookup(const Mat& m) const {
    auto it = index_.find(key_of(m, dim_));
    require(it != index_.end(), "FiniteGroup: matrix is not a group element");
    return it->second;
  }

  // Gauss-Jordan over GF(q) on the small matrix.
  Mat mat_inverse(const Mat& m) const {
    std::array<std::uint8_t, 18> a{};
    for (unsigned i = 0; i < dim_; ++i) {
      for (unsigned j = 0; j < dim_; ++j) a[i * 2 * dim_ + j] = m[i * dim_ + j];
      a[i * 2 * dim_ + dim_ + i] = 1;
    }
    for (unsigned c = 0; c < dim_; ++c) {
      unsigned sel = dim_;
      for (unsigned i = c; i < dim_; ++i)
        if (a[i * 2 * dim_ + c] != 0) { sel = i; break; }
      require(sel != dim_, "FiniteGroup: singular matrix");
      if (sel != c)
        for (unsigned j = 0; j < 2 * dim_; ++j) std::swap(a[sel * 2 * dim_ + j], a[c * 2 * dim_ + j]);
      unsigned piv = field_.inv(a[c * 2 * dim_ + c]);
      for (unsigned j = 0; j < 2 * dim_; ++j)
        a[c * 2 * dim_ + j] = static_cast<std::uint8_t>(field_.mul(a[c * 2 * dim_ + j], piv));
      for (unsigned i = 0; i < dim_; ++i) {
        if (i == c || a[i * 2 * dim_ + c] == 0) continue;
        unsigned f = a[i * 2 * dim_ + c];
        for (unsigned j = 0; j < 2 * dim_; ++j) {
          unsigned sub = field_.mul(f, a[c * 2 * dim_ + j]);
          a[i * 2 * dim_ + j] = static_cast<std::uint8_t>(field_.add(a[i * 2 * dim_ + j], field_.neg(sub)));
        }
      }
    }
    Mat out{};
    for (unsigned i = 0; i < dim_; ++i)
      for (unsigned j = 0; j < dim_; ++j) out[i * dim_ + j] = a[i * 2 * dim_ + dim_ + j];
    return out;
  }

  void compute_orders_and_classes() {
    element_order_.assign(order(), 1);
    exponent_ = 1;
    for (gidx a = 0; a < order(); ++a) {
      unsigned o = 1;
      gidx x = a;
      while (x != identity()) {
        x = mul(x, a);
        ++o;
      }
      element_order_[a] = o;
      exponent_ = static_cast<unsigned>(std::lcm(exponent_, o));
    }

    class_of_.assign(order(), 0);
    std::vector<bool> seen(order(), false);
    for (gidx a = 0; a < order(); ++a) {
      if (seen[a]) continue;
      std::vector<gidx> cls;
      for (gidx g = 0; g < order(); ++g) {
        gidx c = conjugate(g, a);
        if (!seen[c]) {
          seen[c] = true;
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      unsigned id = static_cast<unsigned>(classes_.size());
      for (gidx c : cls) class_of_[c] = id;
      classes_.push_back(std::move(cls));
    }
  }

  void spot_check_associativity() const {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<gidx> pick(0, order() - 1);
    for (int t = 0; t < 24; ++t) {
      gidx a = pick(rng), b = pick(rng), c = pick(rng);
      require(mul(mul(a, b), c) == mul(a, mul(b, c)), "FiniteGroup: associativity spot check failed");
    }
  }

  std::string family_;
  unsigned dim_;
  FiniteField field_;
  std::vector<Mat> elems_;
  std::unordered_map<std::uint64_t, gidx> index_;
  std::vector<gidx> inv_;
  std::vector<gidx> table_;
  std::vector<unsigned> element_order_;
  unsigned exponent_ = 1;
  std::vector<std::vector<gidx>> classes_;
  std::vector<unsigned> class_of_;
};

// Standard parabolic data P = M U together with the Borel subgroup; all
// subsets are verified subgroups and every p factors uniquely as m*u.
struct SubgroupChain {
  const FiniteGroup* G = nullptr;
  std::vector<gidx> P, M, U, B;
  std::string parabolic; // "borel", "p21", "p12"

  void verify() const {
    require(G->is_subgroup(P), "SubgroupChain: P is not a subgroup");
    require(G->is_subgroup(M), "SubgroupChain: M is not a subgroup");
    require(G->is_subgroup(U), "SubgroupChain: U is not a subgroup");
    require(G->is_subgroup(B), "SubgroupChain: B is not a subgroup");
    require(P.size() == M.size() * U.size(), "SubgroupChain: |P| != |M||U|");

    // B contained in P for standard parabolics
    std::vector<bool> inP(G->order(), false);
    for (gidx p : P) inP[p] = true;
    for (gidx b : B) require(inP[b], "SubgroupChain: B not contained in P");

    // U normal in P
    std::vector<bool> inU(G->order(), false);
    for (gidx u : U) inU[u] = true;
    for (gidx p : P)
      for (gidx u : U) require(inU[G->conjugate(p, u)], "SubgroupChain: U not normal in P");

    // Levi decomposition M x U -> P is a bijection
    std::vector<bool> hit(G->order(), false);
    for (gidx m : M)
      for (gidx u : U) {
        gidx p = G->mul(m, u);
        require(inP[p] && !hit[p], "SubgroupChain: Levi decomposition not bijective");
        hit[p] = true;
      }
  }

  // Unique factorization p = m*u with m block-diagonal.
  std::pair<gidx, gidx> levi_factor(gidx p) const {
    const FiniteGroup::Mat& mat = G->matrix_of(p);
    unsigned d = G->matrix_dim();
    FiniteGroup::Mat mm{};
    if (parabolic == "p21") {
      // blocks {1,2} x {1,2} and {3} x {3}
      for (unsigned i = 0; i < 2; ++i)
        for (unsigned j = 0; j < 2; ++j) mm[i * d + j] = mat[i * d + j];
      mm[2 * d + 2] = mat[2 * d + 2];
    } else if (parabolic == "p12") {
      mm[0] = mat[0];
      for (unsigned i = 1; i < 3; ++i)
        for (unsigned j = 1; j < 3; ++j) mm[i * d + j] = mat[i * d + j];
    } else {
      for (unsigned i = 0; i < d; ++i) mm[i * d + i] = mat[i * d + i];
    }
    gidx m = G->index_of(mm);
    gidx u = G->mul(G->inv(m), p);
    return {m, u};
  }
};

struct BuiltGroup {
  std::shared_ptr<FiniteGroup> group;
  SubgroupChain chain;        // requested parabolic
  SubgroupChain borel_chain;  // always the Borel chain
  std::vector<gidx> simple_reflections; // monomial representatives
  gidx longest_element = 0;             // representative n0 of w0
  unsigned weyl_order = 0;
};

namespace detail {

inline std::vector<gidx> elements_matching(const FiniteGroup& G, bool (*pred)(const FiniteGroup::Mat&, unsigned)) {
  std::vector<gidx> out;
  for (gidx a = 0; a < G.order(); ++a)
    if (pred(G.matrix_of(a), G.matrix_dim())) out.push_back(a);
  return out;
}

inline bool upper_triangular(const FiniteGroup::Mat& m, unsigned d) {
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < i; ++j)
      if (m[i * d + j] != 0) return false;
  return true;
}

inline bool diagonal(const FiniteGroup::Mat& m, unsigned d) {
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j)
      if (i != j && m[i * d + j] != 0) return false;
  return true;
}

inline bool upper_unipotent(const FiniteGroup::Mat& m, unsigned d) {
  if (!upper_triangular(m, d)) return false;
  for (unsigned i = 0; i < d; ++i)
    if (m[i * d + i] != 1) return false;
  return true;
}

} // namespace detail

// Build a split group of the given family over GF(q) with its standard Borel
// subgroup and the requested standard parabolic ("borel", or "p21"/"p12" for
// GL3).
inline BuiltGroup build_group(const std::string& family, unsigned q, const std::string& parabolic = "borel") {
  require(family == "SL2" || family == "GL2" || family == "GL3",
          "build_group: unsupported family " + family);
  require(q >= 2 && q <= 7, "build_group: q out of the supported range");
  FiniteField F(q);

  unsigned dim = (family == "GL3") ? 3 : 2;
  std::vector<FiniteGroup::Mat> gens;
  auto mat = [&](std::initializer_list<unsigned> vals) {
    FiniteGroup::Mat m{};
    unsigned i = 0;
    for (unsigned v : vals) m[i++] = static_cast<std::uint8_t>(v);
    return m;
  };

  // transvections with every nonzero parameter, plus a torus generator for GL
  for (unsigned t = 1; t < q; ++t) {
    if (dim == 2) {
      gens.push_back(mat({1, t, 0, 1}));
      gens.push_back(mat({1, 0, t, 1}));
    } else {
      gens.push_back(mat({1, t, 0, 0, 1, 0, 0, 0, 1}));
      gens.push_back(mat({1, 0, 0, t, 1, 0, 0, 0, 1}));
      gens.push_back(mat({1, 0, 0, 0, 1, t, 0, 0, 1}));
      gens.push_back(mat({1, 0, 0, 0, 1, 0, 0, t, 1}));
    }
  }
  if (family == "GL2") gens.push_back(mat({F.generator(), 0, 0, 1}));
  if (family == "GL3") gens.push_back(mat({F.generator(), 0, 0, 0, 1, 0, 0, 0, 1}));

  BuiltGroup out;
  out.group = std::make_shared<FiniteGroup>(family, dim, F, gens);
  FiniteGroup& G = *out.group;

  // order sanity against the standard formulas
  auto expected_order = [&]() -> std::size_t {
    std::size_t qq = q;
    if (family == "SL2") return qq * (qq * qq - 1);
    if (family == "GL2") return (qq * qq - 1) * (qq * qq - qq);
    std::size_t q3 = qq * qq * qq;
    return (q3 - 1) * (q3 - qq) * (q3 - qq * qq);
  }();
  require(G.order() == expected_order, "build_group: closure produced wrong group order");

  SubgroupChain borel;
  borel.G = &G;
  borel.parabolic = "borel";
  borel.B = detail::elements_matching(G, detail::upper_triangular);
  borel.P = borel.B;
  borel.M = detail::elements_matching(G, detail::diagonal);
  borel.U = detail::elements_matching(G, detail::upper_unipotent);
  borel.verify();
  out.borel_chain = borel;

  if (parabolic == "borel") {
    out.chain = borel;
  } else {
    require(family == "GL3", "build_group: parabolic selection requires GL3");
    require(parabolic == "p21" || parabolic == "p12", "build_group: unknown parabolic " + parabolic);
    SubgroupChain c;
    c.G = &G;
    c.parabolic = parabolic;
    c.B = borel.B;
    for (gidx a = 0; a < G.order(); ++a) {
      const FiniteGroup::Mat& m = G.matrix_of(a);
      bool inP, inM, inU;
      if (parabolic == "p21") {
        inP = m[6] == 0 && m[7] == 0;
        inM = inP && m[2] == 0 && m[5] == 0;
        inU = m[0] == 1 && m[4] == 1 && m[8] == 1 && m[1] == 0 && m[3] == 0 && m[6] == 0 && m[7] == 0;
      } else {
        inP = m[3] == 0 && m[6] == 0;
        inM = inP && m[1] == 0 && m[2] == 0;
        inU = m[0] == 1 && m[4] == 1 && m[8] == 1 && m[3] == 0 && m[5] == 0 && m[6] == 0 && m[7] == 0;
      }
      if (inP) c.P.push_back(a);
      if (inM) c.M.push_back(a);
      if (inU) c.U.push_back(a);
    }
    c.verify();
    out.chain = c;
  }

  // Weyl data: monomial representatives of the simple reflections and of the
  // longest element.
  if (family == "SL2") {
    out.simple_reflections = {G.index_of(mat({0, F.neg(1), 1, 0}))};
    out.longest_element = out.simple_reflections[0];
    out.weyl_order = 2;
  } else if (family == "GL2") {
    out.simple_reflections = {G.index_of(mat({0, 1, 1, 0}))};
    out.longest_element = out.simple_reflections[0];
    out.weyl_order = 2;
  } else {
    gidx s1 = G.index_of(mat({0, 1, 0, 1, 0, 0, 0, 0, 1}));
    gidx s2 = G.index_of(mat({1, 0, 0, 0, 0, 1, 0, 1, 0}));
    out.simple_reflections = {s1, s2};
    out.longest_element = G.index_of(mat({0, 0, 1, 0, 1, 0, 1, 0, 0}));
    out.weyl_order = 6;
  }
  return out;
}

// Double coset decomposition H \ G / K.
struct DoubleCosetDecomposition {
  std::vector<gidx> representatives;
  std::vector<std::size_t> sizes;
};

inline DoubleCosetDecomposition double_cosets(const FiniteGroup& G, const std::vector<gidx>& H,
                                              const std::vector<gidx>& K) {
  require(G.is_subgroup(H) && G.is_subgroup(K), "double_cosets: inputs must be verified subgroups");
  DoubleCosetDecomposition out;
  std::vector<bool> seen(G.order(), false);
  std::size_t covered = 0;
  for (gidx g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    std::size_t size = 0;
    for (gidx h : H) {
      gidx hg = G.mul(h, g);
      for (gidx k : K) {
        gidx x = G.mul(hg, k);
        if (!seen[x]) {
          seen[x] = true;
          ++size;
        }
      }
    }
    out.representatives.push_back(g);
    out.sizes.push_back(size);
    covered += size;
  }
  require(covered == G.order(), "double_cosets: cosets failed to partition the group");
  return out;
}

// Linear character of an abelian subgroup, stored by explicit values.
struct TorusCharacter {
  const FiniteGroup* G = nullptr;
  std::vector<gidx> M;                       // sorted support subgroup
  std::map<gidx, CycloScalar> values;

  const CycloScalar& value(gidx m) const {
    auto it = values.find(m);
    require(it != values.end(), "TorusCharacter: element outside the torus");
    return it->second;
  }

  bool is_trivial() const {
    for (auto& [m, v] : values)
      if (v != CycloScalar(1)) return false;
    return true;
  }

  friend bool operator==(const TorusCharacter& a, const TorusCharacter& b) {
    return a.G == b.G && a.M == b.M && a.values == b.values;
  }
};

// chi(m) = zeta_{q-1}^{sum_i exponents[i] * dlog(m_ii)} on the diagonal torus.
inline TorusCharacter torus_character(const SubgroupChain& chain, const std::vector<int>& exponents) {
  const FiniteGroup& G = *chain.G;
  require(G.is_abelian_subset(chain.M), "torus_character: Levi factor is not abelian (unsupported)");
  unsigned d = G.matrix_dim();
  unsigned qm1 = G.q() - 1;
  require(exponents.size() == d, "torus_character: need one exponent per diagonal entry");
  TorusCharacter chi;
  chi.G = &G;
  chi.M = chain.M;
  for (gidx m : chain.M) {
    const FiniteGroup::Mat& mat = G.matrix_of(m);
    long long e = 0;
    for (unsigned i = 0; i < d; ++i) {
      unsigned di = mat[i * d + i];
      e += static_cast<long long>(exponents[i]) * G.field().dlog(di);
    }
    chi.values[m] = CycloScalar::root_of_unity(qm1, e);
  }
  return chi;
}

inline TorusCharacter trivial_character(const SubgroupChain& chain) {
  std::vector<int> ex(chain.G->matrix_dim(), 0);
  return torus_character(chain, ex);
}

// N_G(M)-orbit of a linear character of the abelian Levi M (the equivalence
// class Delta of the character).
inline std::vector<TorusCharacter> weyl_orbit(const SubgroupChain& chain, const TorusCharacter& chi) {
  const FiniteGroup& G = *chain.G;
  require(G.is_abelian_subset(chain.M), "weyl_orbit: Levi factor is not abelian (unsupported)");
  std::vector<bool> inM(G.order(), false);
  for (gidx m : chain.M) inM[m] = true;

  std::vector<TorusCharacter> orbit{chi};
  for (gidx n = 0; n < G.order(); ++n) {
    bool normalizes = true;
    for (gidx m : chain.M)
      if (!inM[G.conjugate(n, m)]) { normalizes = false; break; }
    if (!normalizes) continue;
    TorusCharacter moved;
    moved.G = &G;
    moved.M = chain.M;
    for (gidx m : chain.M) moved.values[m] = chi.value(G.conjugate(G.inv(n), m));
    bool known = false;
    for (const TorusCharacter& c : orbit)
      if (c == moved) { known = true; break; }
    if (!known) orbit.push_back(std::move(moved));
  }
  return orbit;
}

} // namespace hecke
