#pragma once

#include <cstdint>
#include <vector>

#include "hecke/error.hpp"

namespace hecke {

// GF(q) for small prime powers, with full arithmetic tables. Elements are
// encoded 0..q-1; for q = p^k the encoding is the base-p coefficient vector
// of the residue polynomial.
class FiniteField {
public:
  explicit FiniteField(unsigned q) : q_(q) {
    require(q >= 2, "FiniteField: q must be at least 2");
    p_ = smallest_prime_factor(q);
    k_ = 0;
    unsigned t = q;
    while (t > 1) {
      require(t % p_ == 0, "FiniteField: q is not a prime power");
      t /= p_;
      ++k_;
    }
    build_tables();
  }

  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned degree() const { return k_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned inv(unsigned a) const {
    require(a != 0, "FiniteField: inverse of zero");
    return inv_[a];
  }

  // Multiplicative generator and its discrete logarithm.
  unsigned generator() const { return gen_; }
  unsigned dlog(unsigned a) const {
    require(a != 0, "FiniteField: dlog of zero");
    return dlog_[a];
  }

private:
  static unsigned smallest_prime_factor(unsigned n) {
    for (unsigned d = 2; d * d <= n; ++d)
      if (n % d == 0) return d;
    return n;
  }

  // polynomial (base-p encoded) multiplication mod the chosen irreducible
  unsigned poly_mul(unsigned a, unsigned b, const std::vector<unsigned>& irred) const {
    std::vector<unsigned> da(k_), db(k_), prod(2 * k_ - 1, 0);
    for (unsigned i = 0, t = a; i < k_; ++i, t /= p_) da[i] = t % p_;
    for (unsigned i = 0, t = b; i < k_; ++i, t /= p_) db[i] = t % p_;
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    // reduce modulo the monic irreducible of degree k
    for (unsigned d = 2 * k_ - 2; d + 1 > k_; --d) {
      unsigned c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (unsigned j = 0; j < k_; ++j) {
        unsigned sub = (c * irred[j]) % p_;
        prod[d - k_ + j] = (prod[d - k_ + j] + p_ - sub % p_) % p_;
      }
    }
    unsigned out = 0;
    for (unsigned i = k_; i-- > 0;) out = out * p_ + prod[i];
    return out;
  }

  void build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);

    if (k_ == 1) {
      for (unsigned a = 0; a < q_; ++a) {
        neg_[a] = (q_ - a) % q_;
        for (unsigned b = 0; b < q_; ++b) {
          add_[a * q_ + b] = (a + b) % q_;
          mul_[a * q_ + b] = (a * b) % q_;
        }
      }
    } else {
      std::vector<unsigned> irred = find_irreducible();
      for (unsigned a = 0; a < q_; ++a) {
        // addition is coefficient-wise mod p under base-p encoding
        for (unsigned b = 0; b < q_; ++b) {
          unsigned s = 0, pw = 1, x = a, y = b;
          for (unsigned i = 0; i < k_; ++i) {
            s += ((x % p_ + y % p_) % p_) * pw;
            pw *= p_;
            x /= p_;
            y /= p_;
          }
          add_[a * q_ + b] = s;
          mul_[a * q_ + b] = poly_mul(a, b, irred);
        }
        unsigned n = 0, pw = 1, x = a;
        for (unsigned i = 0; i < k_; ++i) {
          n += ((p_ - x % p_) % p_) * pw;
          pw *= p_;
          x /= p_;
        }
        neg_[a] = n;
      }
    }

    for (unsigned a = 1; a < q_; ++a)
      for (unsigned b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) inv_[a] = b;

    // multiplicative generator + discrete logs
    dlog_.assign(q_, 0);
    for (unsigned g = 1; g < q_; ++g) {
      unsigned x = g, count = 1;
      while (x != 1) {
        x = mul_[x * q_ + g];
        ++count;
      }
      if (count == q_ - 1) {
        gen_ = g;
        unsigned cur = 1;
        for (unsigned e = 0; e < q_ - 1; ++e) {
          dlog_[cur] = e;
          cur = mul_[cur * q_ + g];
        }
        return;
      }
    }
    require(q_ == 2, "FiniteField: no generator found");
    gen_ = 1;
    dlog_[1] = 0;
  }

  // monic irreducible x^k + c_{k-1)x^{k-1} + ... + c_0 over F_p, returned as
  // the coefficient list c_0..c_{k-1}
  std::vector<unsigned> find_irreducible() const {
    unsigned total = 1;
    for (unsigned i = 0; i < k_; ++i) total *= p_;
    for (unsigned code = 0; code < total; ++code) {
      std::vector<unsigned> c(k_);
      for (unsigned i = 0, t = code; i < k_; ++i, t /= p_) c[i] = t % p_;
      bool has_root = false;
      for (unsigned x = 0; x < p_ && !has_root; ++x) {
        unsigned val = 1; // leading coefficient
        for (unsigned i = k_; i-- > 0;) val = (val * x + c[i]) % p_;
        if (val == 0) has_root = true;
      }
      // degree <= 3 here, so irreducible over F_p iff no roots (k = 2 or 3)
      if (!has_root) return c;
    }
    fail("FiniteField: no irreducible polynomial found");
  }

  unsigned q_, p_, k_;
  unsigned gen_ = 1;
  std::vector<unsigned> add_, mul_, neg_, inv_;
  std::vector<unsigned> dlog_;
};

} // namespace hecke
