#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hecke/cyclotomic.hpp"
#include "hecke/error.hpp"
#include "hecke/group_algebra.hpp"
#include "hecke/groups.hpp"

namespace hecke {

namespace modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a % p, p - 2, p); }

} // namespace modp

// Exact character table of a finite group over Q(zeta_exp(G)), computed with
// the Dixon modular method: central characters are found as simultaneous
// eigenvectors of the class-sum matrices over F_p (p = 1 mod exp(G)), and the
// character values are lifted to cyclotomic integers through the power-map
// discrete Fourier inversion. Row orthogonality is verified exactly over the
// cyclotomic field before the table is returned.
class CharacterTable {
public:
  explicit CharacterTable(const FiniteGroup& G) : G_(&G), conductor_(G.exponent()) {
    build();
    verify();
  }

  const FiniteGroup& group() const { return *G_; }
  unsigned conductor() const { return conductor_; }
  unsigned num_irreducibles() const { return static_cast<unsigned>(degrees_.size()); }
  unsigned degree(unsigned i) const { return degrees_[i]; }

  const CycloScalar& value(unsigned i, unsigned cls) const { return values_[i][cls]; }
  CycloScalar value_at(unsigned i, gidx g) const { return values_[i][G_->class_of(g)]; }

  // <a, b> = (1/|G|) sum_g a(g) conj(b(g)) for class functions given by
  // per-class value vectors.
  CycloScalar inner_product(const std::vector<CycloScalar>& a, const std::vector<CycloScalar>& b) const {
    require(a.size() == G_->num_classes() && b.size() == G_->num_classes(),
            "CharacterTable: class function size mismatch");
    CycloScalar s;
    const auto& classes = G_->conjugacy_classes();
    for (unsigned c = 0; c < classes.size(); ++c)
      s += CycloScalar(static_cast<long long>(classes[c].size())) * a[c] * b[c].conj();
    return s * CycloScalar(Rational(1, static_cast<long long>(G_->order())));
  }

  std::vector<CycloScalar> row(unsigned i) const { return values_[i]; }

  // Central projector idempotent: lambda(e_i) = delta_{i,lambda} Id.
  GroupAlgebraElement central_idempotent(unsigned i) const {
    GroupAlgebraElement e(*G_);
    CycloScalar scale(Rational(degrees_[i], static_cast<long long>(G_->order())));
    for (gidx g = 0; g < G_->order(); ++g) e.add_term(g, scale * value_at(i, G_->inv(g)));
    return e;
  }

  // Plain character element (deg/|G|) Theta_i as a function on the group.
  GroupAlgebraElement character_element(unsigned i) const {
    GroupAlgebraElement e(*G_);
    CycloScalar scale(Rational(degrees_[i], static_cast<long long>(G_->order())));
    for (gidx g = 0; g < G_->order(); ++g) e.add_term(g, scale * value_at(i, g));
    return e;
  }

  // Index of the conjugate character (zeta -> zeta^{-1} on all values).
  unsigned conjugate_index(unsigned i) const {
    for (unsigned j = 0; j < num_irreducibles(); ++j) {
      bool match = true;
      for (unsigned c = 0; c < G_->num_classes() && match; ++c)
        match = values_[j][c] == values_[i][c].conj();
      if (match) return j;
    }
    fail("CharacterTable: conjugate character not found");
  }

private:
  void build() {
    const FiniteGroup& G = *G_;
    unsigned r = G.num_classes();
    const auto& classes = G.conjugacy_classes();

    // class representatives and the identity class
    std::vector<gidx> rep(r);
    for (unsigned c = 0; c < r; ++c) rep[c] = classes[c][0];
    unsigned id_class = G.class_of(G.identity());

    // class multiplication coefficients a[i][j][k]
    std::vector<std::vector<std::vector<std::uint64_t>>> a(
        r, std::vector<std::vector<std::uint64_t>>(r, std::vector<std::uint64_t>(r, 0)));
    for (unsigned i = 0; i < r; ++i)
      for (unsigned k = 0; k < r; ++k) {
        gidx zk = rep[k];
        for (gidx x : classes[i]) {
          unsigned j = G.class_of(G.mul(G.inv(x), zk));
          a[i][j][k] += 1;
        }
      }

    // modulus p = 1 (mod exp), p > |G|
    std::uint64_t p = conductor_ + 1;
    while (p <= G.order() || (p - 1) % conductor_ != 0 || !is_prime_u64(p)) ++p;
    p_ = p;

    // primitive conductor-th root of unity mod p
    std::vector<unsigned> prime_factors;
    {
      unsigned n = conductor_;
      for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) {
          prime_factors.push_back(d);
          while (n % d == 0) n /= d;
        }
      if (n > 1) prime_factors.push_back(n);
    }
    std::uint64_t eta = 0;
    for (std::uint64_t cand = 2; cand < p; ++cand) {
      std::uint64_t x = modp::pow(cand, (p - 1) / conductor_, p);
      bool primitive = x != 1;
      for (unsigned f : prime_factors)
        if (modp::pow(x, conductor_ / f, p) == 1) primitive = false;
      if (primitive) { eta = x; break; }
    }
    require(eta != 0 || conductor_ == 1, "CharacterTable: no primitive root found");
    if (conductor_ == 1) eta = 1;

    // split the common eigenvectors of the class-sum matrices over F_p
    std::vector<std::vector<std::vector<std::uint64_t>>> spaces;
    {
      std::vector<std::vector<std::uint64_t>> full;
      for (unsigned i = 0; i < r; ++i) {
        std::vector<std::uint64_t> v(r, 0);
        v[i] = 1;
        full.push_back(v);
      }
      spaces.push_back(full);
    }
    for (unsigned i = 0; i < r; ++i) {
      std::vector<std::vector<std::vector<std::uint64_t>>> next;
      for (auto& space : spaces) {
        if (space.size() == 1) {
          next.push_back(space);
          continue;
        }
        auto pieces = split_space(space, a[i], p);
        for (auto& piece : pieces) next.push_back(std::move(piece));
      }
      spaces = std::move(next);
      bool all_one = true;
      for (auto& s : spaces) all_one = all_one && s.size() == 1;
      if (all_one) break;
    }
    require(spaces.size() == r, "CharacterTable: eigenspace splitting incomplete");

    // central characters, degrees, and mod-p character values
    std::vector<unsigned> inv_class(r);
    for (unsigned c = 0; c < r; ++c) inv_class[c] = G.class_of(G.inv(rep[c]));

    std::vector<std::vector<std::uint64_t>> omegas;
    for (auto& space : spaces) {
      std::vector<std::uint64_t> w = space[0];
      require(w[id_class] != 0, "CharacterTable: eigenvector vanishes at the identity class");
      std::uint64_t scale = modp::inv(w[id_class], p);
      for (auto& x : w) x = modp::mul(x, scale, p);
      omegas.push_back(std::move(w));
    }

    unsigned maxdeg = static_cast<unsigned>(isqrt(Integer(G.order())).convert_to<unsigned long long>());
    std::vector<std::vector<std::uint64_t>> chi_mod(r, std::vector<std::uint64_t>(r));
    degrees_.assign(r, 0);
    for (unsigned s = 0; s < r; ++s) {
      std::uint64_t T = 0;
      for (unsigned j = 0; j < r; ++j) {
        std::uint64_t term = modp::mul(omegas[s][j], omegas[s][inv_class[j]], p);
        term = modp::mul(term, modp::inv(classes[j].size() % p, p), p);
        T = (T + term) % p;
      }
      std::uint64_t d2 = modp::mul(G.order() % p, modp::inv(T, p), p);
      unsigned deg = 0;
      for (unsigned d = 1; d <= maxdeg; ++d)
        if (modp::mul(d, d, p) == d2) { deg = d; break; }
      require(deg != 0, "CharacterTable: degree recovery failed");
      degrees_[s] = deg;
      for (unsigned j = 0; j < r; ++j)
        chi_mod[s][j] =
            modp::mul(modp::mul(deg, omegas[s][j], p), modp::inv(classes[j].size() % p, p), p);
    }

    // lift to Q(zeta_conductor) via discrete Fourier inversion over the cyclic
    // group generated by each class representative
    values_.assign(r, std::vector<CycloScalar>(r));
    for (unsigned s = 0; s < r; ++s) {
      for (unsigned j = 0; j < r; ++j) {
        gidx g = rep[j];
        unsigned o = G.element_order(g);
        std::uint64_t eta_o = modp::pow(eta, conductor_ / o, p);
        std::uint64_t inv_o = modp::inv(o % p, p);
        CycloScalar val = CycloScalar::zero(conductor_);
        for (unsigned k = 0; k < o; ++k) {
          std::uint64_t mk = 0;
          gidx gt = G.identity();
          for (unsigned t = 0; t < o; ++t) {
            std::uint64_t term = chi_mod[s][G.class_of(gt)];
            term = modp::mul(term, modp::pow(eta_o, (o - k % o) * static_cast<std::uint64_t>(t) % o, p), p);
            mk = (mk + term) % p;
            gt = G.mul(gt, g);
          }
          mk = modp::mul(mk, inv_o, p);
          require(mk <= degrees_[s], "CharacterTable: lifted multiplicity out of range");
          if (mk)
            val += CycloScalar(static_cast<long long>(mk)) *
                   CycloScalar::root_of_unity(conductor_, static_cast<long long>(conductor_ / o) * k);
        }
        values_[s][j] = val;
      }
    }

    // deterministic ordering: by degree, then by serialized values
    std::vector<unsigned> order(r);
    for (unsigned i = 0; i < r; ++i) order[i] = i;
    std::vector<std::string> keys(r);
    for (unsigned i = 0; i < r; ++i) {
      std::string k;
      for (unsigned j = 0; j < r; ++j) k += values_[i][j].to_string() + "|";
      keys[i] = k;
    }
    std::sort(order.begin(), order.end(), [&](unsigned x, unsigned y) {
      if (degrees_[x] != degrees_[y]) return degrees_[x] < degrees_[y];
      return keys[x] < keys[y];
    });
    std::vector<unsigned> deg2(r);
    std::vector<std::vector<CycloScalar>> val2(r);
    for (unsigned i = 0; i < r; ++i) {
      deg2[i] = degrees_[order[i]];
      val2[i] = values_[order[i]];
    }
    degrees_ = std::move(deg2);
    values_ = std::move(val2);
  }

  // Eigen-split `space` under the class-sum matrix with coefficients
  // a_i[j][k]; vectors satisfy (A v)_j = sum_k a[j][k] v_k.
  static std::vector<std::vector<std::vector<std::uint64_t>>> split_space(
      const std::vector<std::vector<std::uint64_t>>& space,
      const std::vector<std::vector<std::uint64_t>>& aijk, std::uint64_t p) {
    unsigned r = static_cast<unsigned>(space[0].size());
    unsigned d = static_cast<unsigned>(space.size());

    auto apply = [&](const std::vector<std::uint64_t>& v) {
      std::vector<std::uint64_t> out(r, 0);
      for (unsigned j = 0; j < r; ++j) {
        std::uint64_t s = 0;
        for (unsigned k = 0; k < r; ++k)
          if (aijk[j][k] && v[k]) s = (s + modp::mul(aijk[j][k] % p, v[k], p)) % p;
        out[j] = s;
      }
      return out;
    };

    // matrix of the action in the coordinates of `space`
    std::vector<std::vector<std::uint64_t>> C(d, std::vector<std::uint64_t>(d, 0));
    for (unsigned c = 0; c < d; ++c) {
      std::vector<std::uint64_t> img = apply(space[c]);
      std::vector<std::uint64_t> coords = solve_in_span(space, img, p);
      for (unsigned rr = 0; rr < d; ++rr) C[rr][c] = coords[rr];
    }

    // characteristic polynomial by interpolation of det(C - t I)
    std::vector<std::uint64_t> ts, dets;
    for (unsigned t = 0; t <= d; ++t) {
      std::vector<std::vector<std::uint64_t>> M = C;
      for (unsigned i = 0; i < d; ++i) M[i][i] = (M[i][i] + p - t % p) % p;
      ts.push_back(t);
      dets.push_back(det_mod(M, p));
    }
    std::vector<std::uint64_t> charpoly = interpolate(ts, dets, p);

    // roots by exhaustive evaluation
    std::vector<std::uint64_t> roots;
    for (std::uint64_t lam = 0; lam < p; ++lam) {
      std::uint64_t v = 0;
      for (unsigned i = charpoly.size(); i-- > 0;) v = (modp::mul(v, lam, p) + charpoly[i]) % p;
      if (v == 0) roots.push_back(lam);
    }

    std::vector<std::vector<std::vector<std::uint64_t>>> pieces;
    for (std::uint64_t lam : roots) {
      std::vector<std::vector<std::uint64_t>> M = C;
      for (unsigned i = 0; i < d; ++i) M[i][i] = (M[i][i] + p - lam) % p;
      auto ker = kernel_mod(M, p);
      if (ker.empty()) continue;
      std::vector<std::vector<std::uint64_t>> piece;
      for (auto& coords : ker) {
        std::vector<std::uint64_t> v(r, 0);
        for (unsigned c = 0; c < d; ++c)
          for (unsigned j = 0; j < r; ++j) v[j] = (v[j] + modp::mul(coords[c], space[c][j], p)) % p;
        piece.push_back(std::move(v));
      }
      pieces.push_back(std::move(piece));
    }
    std::size_t total = 0;
    for (auto& piece : pieces) total += piece.size();
    require(total == d, "CharacterTable: split lost dimensions (class matrix not semisimple?)");
    return pieces;
  }

  static std::uint64_t det_mod(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
    unsigned n = static_cast<unsigned>(m.size());
    std::uint64_t det = 1;
    for (unsigned c = 0; c < n; ++c) {
      unsigned sel = n;
      for (unsigned i = c; i < n; ++i)
        if (m[i][c]) { sel = i; break; }
      if (sel == n) return 0;
      if (sel != c) {
        std::swap(m[sel], m[c]);
        det = p - det;
        if (det == p) det = 0;
      }
      det = modp::mul(det, m[c][c], p);
      std::uint64_t inv = modp::inv(m[c][c], p);
      for (unsigned i = c + 1; i < n; ++i) {
        if (!m[i][c]) continue;
        std::uint64_t f = modp::mul(m[i][c], inv, p);
        for (unsigned j = c; j < n; ++j) m[i][j] = (m[i][j] + p - modp::mul(f, m[c][j], p)) % p;
      }
    }
    return det % p;
  }

  static std::vector<std::vector<std::uint64_t>> kernel_mod(std::vector<std::vector<std::uint64_t>> m,
                                                            std::uint64_t p) {
    unsigned n = static_cast<unsigned>(m.size());
    std::vector<int> pivot_of_col(n, -1);
    unsigned rrow = 0;
    for (unsigned c = 0; c < n && rrow < n; ++c) {
      unsigned sel = n;
      for (unsigned i = rrow; i < n; ++i)
        if (m[i][c]) { sel = i; break; }
      if (sel == n) continue;
      std::swap(m[sel], m[rrow]);
      std::uint64_t inv = modp::inv(m[rrow][c], p);
      for (unsigned j = 0; j < n; ++j) m[rrow][j] = modp::mul(m[rrow][j], inv, p);
      for (unsigned i = 0; i < n; ++i) {
        if (i == rrow || !m[i][c]) continue;
        std::uint64_t f = m[i][c];
        for (unsigned j = 0; j < n; ++j) m[i][j] = (m[i][j] + p - modp::mul(f, m[rrow][j], p)) % p;
      }
      pivot_of_col[c] = static_cast<int>(rrow);
      ++rrow;
    }
    std::vector<std::vector<std::uint64_t>> basis;
    for (unsigned c = 0; c < n; ++c) {
      if (pivot_of_col[c] != -1) continue;
      std::vector<std::uint64_t> v(n, 0);
      v[c] = 1;
      for (unsigned j = 0; j < n; ++j)
        if (pivot_of_col[j] != -1) {
          std::uint64_t val = m[static_cast<unsigned>(pivot_of_col[j])][c];
          v[j] = val ? p - val : 0;
        }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  static std::vector<std::uint64_t> solve_in_span(const std::vector<std::vector<std::uint64_t>>& basis,
                                                  const std::vector<std::uint64_t>& target,
                                                  std::uint64_t p) {
    unsigned r = static_cast<unsigned>(basis[0].size());
    unsigned d = static_cast<unsigned>(basis.size());
    // augmented system: columns are basis vectors
    std::vector<std::vector<std::uint64_t>> m(r, std::vector<std::uint64_t>(d + 1, 0));
    for (unsigned i = 0; i < r; ++i) {
      for (unsigned c = 0; c < d; ++c) m[i][c] = basis[c][i];
      m[i][d] = target[i];
    }
    std::vector<int> pivot_row_of_col(d, -1);
    unsigned rrow = 0;
    for (unsigned c = 0; c < d && rrow < r; ++c) {
      unsigned sel = r;
      for (unsigned i = rrow; i < r; ++i)
        if (m[i][c]) { sel = i; break; }
      if (sel == r) continue;
      std::swap(m[sel], m[rrow]);
      std::uint64_t inv = modp::inv(m[rrow][c], p);
      for (unsigned j = 0; j <= d; ++j) m[rrow][j] = modp::mul(m[rrow][j], inv, p);
      for (unsigned i = 0; i < r; ++i) {
        if (i == rrow || !m[i][c]) continue;
        std::uint64_t f = m[i][c];
        for (unsigned j = 0; j <= d; ++j) m[i][j] = (m[i][j] + p - modp::mul(f, m[rrow][j], p)) % p;
      }
      pivot_row_of_col[c] = static_cast<int>(rrow);
      ++rrow;
    }
    std::vector<std::uint64_t> coords(d, 0);
    for (unsigned c = 0; c < d; ++c)
      if (pivot_row_of_col[c] != -1) coords[c] = m[static_cast<unsigned>(pivot_row_of_col[c])][d];
    return coords;
  }

  static std::vector<std::uint64_t> interpolate(const std::vector<std::uint64_t>& xs,
                                                const std::vector<std::uint64_t>& ys,
                                                std::uint64_t p) {
    unsigned n = static_cast<unsigned>(xs.size());
    std::vector<std::uint64_t> poly(n, 0);
    for (unsigned i = 0; i < n; ++i) {
      // Lagrange basis polynomial for node i
      std::vector<std::uint64_t> numer{1};
      std::uint64_t denom = 1;
      for (unsigned j = 0; j < n; ++j) {
        if (j == i) continue;
        // multiply numer by (x - x_j)
        std::vector<std::uint64_t> next(numer.size() + 1, 0);
        for (unsigned k = 0; k < numer.size(); ++k) {
          next[k + 1] = (next[k + 1] + numer[k]) % p;
          next[k] = (next[k] + modp::mul(numer[k], p - xs[j] % p, p)) % p;
        }
        numer = std::move(next);
        denom = modp::mul(denom, (xs[i] + p - xs[j]) % p, p);
      }
      std::uint64_t f = modp::mul(ys[i], modp::inv(denom, p), p);
      for (unsigned k = 0; k < numer.size(); ++k)
        poly[k] = (poly[k] + modp::mul(f, numer[k], p)) % p;
    }
    return poly;
  }

  void verify() const {
    const FiniteGroup& G = *G_;
    unsigned r = num_irreducibles();
    std::size_t degsum = 0;
    for (unsigned i = 0; i < r; ++i) degsum += static_cast<std::size_t>(degrees_[i]) * degrees_[i];
    require(degsum == G.order(), "CharacterTable: sum of squared degrees mismatch");
    unsigned id_class = G.class_of(G.identity());
    for (unsigned i = 0; i < r; ++i)
      require(values_[i][id_class] == CycloScalar(static_cast<long long>(degrees_[i])),
              "CharacterTable: degree column mismatch");
    for (unsigned i = 0; i < r; ++i)
      for (unsigned j = 0; j < r; ++j) {
        CycloScalar ip = inner_product(values_[i], values_[j]);
        require(ip == (i == j ? CycloScalar(1) : CycloScalar(0)),
                "CharacterTable: row orthogonality failed");
      }
  }

  const FiniteGroup* G_;
  unsigned conductor_;
  std::uint64_t p_ = 0;
  std::vector<unsigned> degrees_;
  std::vector<std::vector<CycloScalar>> values_;
};

} // namespace hecke
