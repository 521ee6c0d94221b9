#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/numeric.hpp"

namespace hecke {

// Exact element of the cyclotomic field Q(zeta_n), stored in the power basis
// {zeta^k : 0 <= k < phi(n)} reduced modulo the n-th cyclotomic polynomial.
// Values are immutable after construction and canonical: two scalars are
// equal iff their promoted normal forms coincide coefficient by coefficient.
class CycloScalar {
public:
  // Conductors above this bound are rejected (the acting groups here have
  // exponent well below it).
  static constexpr unsigned kMaxConductor = 120;

  CycloScalar() : cond_(1), c_(1) {}

  /*implicit*/ CycloScalar(const Rational& r) : cond_(1), c_(1, r) {}
  /*implicit*/ CycloScalar(long long v) : cond_(1), c_(1, Rational(v)) {}

  static CycloScalar zero(unsigned n = 1) { return CycloScalar(n, raw_tag{}); }

  static CycloScalar one(unsigned n = 1) {
    CycloScalar x(n, raw_tag{});
    x.c_[0] = 1;
    return x;
  }

  static CycloScalar from_rational(const Rational& r, unsigned n) {
    CycloScalar x(n, raw_tag{});
    x.c_[0] = r;
    return x;
  }

  // zeta_n^k
  static CycloScalar root_of_unity(unsigned n, long long k) {
    const Table& t = table(n);
    long long e = k % static_cast<long long>(n);
    if (e < 0) e += n;
    CycloScalar x(n, raw_tag{});
    x.c_ = t.zeta_pow[static_cast<unsigned>(e)];
    x.shrink();
    return x;
  }

  unsigned conductor() const { return cond_; }
  unsigned degree() const { return static_cast<unsigned>(c_.size()); }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const {
    for (const Rational& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return false;
    return true;
  }

  // Rational part when the scalar is rational; error otherwise.
  Rational rational_value() const {
    require(is_rational(), "CycloScalar: not a rational value");
    return c_[0];
  }

  // Embed into Q(zeta_m); m must be a multiple of the current conductor.
  CycloScalar embedded(unsigned m) const {
    if (m == cond_) return *this;
    require(m % cond_ == 0, "CycloScalar: embedding target is not a multiple of the conductor");
    const Table& t = table(m);
    unsigned step = m / cond_;
    CycloScalar out(m, raw_tag{});
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const std::vector<Rational>& pw = t.zeta_pow[static_cast<unsigned>(k) * step];
      for (std::size_t j = 0; j < pw.size(); ++j) out.c_[j] += c_[k] * pw[j];
    }
    return out;
  }

  friend CycloScalar operator+(const CycloScalar& a, const CycloScalar& b) {
    if (a.cond_ == 1 && b.cond_ != 1) {
      CycloScalar out = b;
      out.c_[0] += a.c_[0];
      return out;
    }
    if (b.cond_ == 1 && a.cond_ != 1) {
      CycloScalar out = a;
      out.c_[0] += b.c_[0];
      return out;
    }
    auto [x, y] = promoted(a, b);
    for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] += y.c_[k];
    x.shrink();
    return x;
  }

  friend CycloScalar operator-(const CycloScalar& a, const CycloScalar& b) {
    if (b.cond_ == 1 && a.cond_ != 1) {
      CycloScalar out = a;
      out.c_[0] -= b.c_[0];
      return out;
    }
    if (a.cond_ == 1 && b.cond_ != 1) {
      CycloScalar out = -b;
      out.c_[0] += a.c_[0];
      return out;
    }
    auto [x, y] = promoted(a, b);
    for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] -= y.c_[k];
    x.shrink();
    return x;
  }

  CycloScalar operator-() const {
    CycloScalar x = *this;
    for (Rational& v : x.c_) v = -v;
    return x;
  }

  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
    if (a.cond_ == 1) {
      if (a.c_[0] == 0) return CycloScalar();
      CycloScalar out = b;
      for (Rational& v : out.c_) v *= a.c_[0];
      return out;
    }
    if (b.cond_ == 1) {
      if (b.c_[0] == 0) return CycloScalar();
      CycloScalar out = a;
      for (Rational& v : out.c_) v *= b.c_[0];
      return out;
    }
    auto [x, y] = promoted(a, b);
    const Table& t = table(x.cond_);
    unsigned phi = static_cast<unsigned>(x.c_.size());
    std::vector<Rational> prod(2 * phi - 1);
    for (unsigned i = 0; i < phi; ++i) {
      if (x.c_[i] == 0) continue;
      for (unsigned j = 0; j < phi; ++j) {
        if (y.c_[j] == 0) continue;
        prod[i + j] += x.c_[i] * y.c_[j];
      }
    }
    CycloScalar out(x.cond_, raw_tag{});
    for (unsigned e = 0; e < prod.size(); ++e) {
      if (prod[e] == 0) continue;
      if (e < phi) {
        out.c_[e] += prod[e];
      } else {
        const std::vector<Rational>& pw = t.zeta_pow[e];
        for (unsigned j = 0; j < phi; ++j) out.c_[j] += prod[e] * pw[j];
      }
    }
    out.shrink();
    return out;
  }

  friend CycloScalar operator/(const CycloScalar& a, const CycloScalar& b) { return a * b.inverse(); }

  CycloScalar& operator+=(const CycloScalar& o) { return *this = *this + o; }
  CycloScalar& operator-=(const CycloScalar& o) { return *this = *this - o; }
  CycloScalar& operator*=(const CycloScalar& o) { return *this = *this * o; }
  CycloScalar& operator/=(const CycloScalar& o) { return *this = *this / o; }

  friend bool operator==(const CycloScalar& a, const CycloScalar& b) {
    if (a.cond_ == b.cond_) return a.c_ == b.c_;
    auto [x, y] = promoted(a, b);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const CycloScalar& a, const CycloScalar& b) { return !(a == b); }

  // Multiplicative inverse via the extended Euclidean algorithm against Phi_n.
  CycloScalar inverse() const {
    require(!is_zero(), "CycloScalar: division by zero");
    if (cond_ == 1) return CycloScalar(Rational(1) / c_[0]);
    const Table& t = table(cond_);
    // Extended gcd of this (as polynomial) and Phi_n over Q.
    std::vector<Rational> r0 = t.phi_poly; // monic, degree phi
    std::vector<Rational> r1 = c_;
    trim(r1);
    std::vector<Rational> s0(1, Rational(0)), s1(1, Rational(1));
    // invariant: r_i = s_i * this  (mod Phi_n)
    while (true) {
      trim(r1);
      require(!r1.empty(), "CycloScalar: inverse failed (zero remainder)");
      if (r1.size() == 1) break;
      auto [q, rem] = poly_divmod(r0, r1);
      std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    Rational unit = r1[0];
    CycloScalar out(cond_, raw_tag{});
    for (std::size_t k = 0; k < s1.size() && k < out.c_.size(); ++k) out.c_[k] = s1[k] / unit;
    // s1 may have degree >= phi only transiently; reduce defensively.
    if (s1.size() > out.c_.size()) {
      out = CycloScalar::zero(cond_);
      for (std::size_t k = 0; k < s1.size(); ++k)
        out += CycloScalar::root_of_unity(cond_, static_cast<long long>(k)) *
               CycloScalar::from_rational(s1[k] / unit, cond_);
    }
    return out;
  }

  // Field conjugation zeta -> zeta^{-1}; restricts to complex conjugation
  // under the canonical embedding.
  CycloScalar conj() const {
    if (cond_ == 1) return *this;
    const Table& t = table(cond_);
    CycloScalar out(cond_, raw_tag{});
    out.c_[0] = c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const std::vector<Rational>& pw = t.zeta_pow[cond_ - static_cast<unsigned>(k)];
      for (std::size_t j = 0; j < pw.size(); ++j) out.c_[j] += c_[k] * pw[j];
    }
    out.shrink();
    return out;
  }

  bool is_totally_real() const { return conj() == *this; }

  // Canonical text form: conductor header then "c0 + c1*z + c2*z^2 + ...".
  std::string to_string() const {
    std::ostringstream os;
    os << "Q(zeta_" << cond_ << "): ";
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      Rational v = c_[k];
      if (first) {
        if (v < 0) { os << "-"; v = -v; }
      } else {
        os << (v < 0 ? " - " : " + ");
        if (v < 0) v = -v;
      }
      first = false;
      if (k == 0) {
        os << v;
      } else {
        if (v != 1) os << v << "*";
        os << "z";
        if (k > 1) os << "^" << k;
      }
    }
    if (first) os << "0";
    return os.str();
  }

  static std::pair<CycloScalar, CycloScalar> promoted(const CycloScalar& a, const CycloScalar& b) {
    if (a.cond_ == b.cond_) return {a, b};
    unsigned n = std::lcm(a.cond_, b.cond_);
    require(n <= kMaxConductor, "CycloScalar: conductor overflow beyond configured bound");
    return {a.embedded(n), b.embedded(n)};
  }

  // Monic coefficients of Phi_n (constant term first, length phi(n)+1).
  static const std::vector<Rational>& cyclotomic_polynomial(unsigned n) { return table(n).phi_poly; }

private:
  struct raw_tag {};
  CycloScalar(unsigned n, raw_tag) : cond_(n), c_(table(n).phi) {}

  // Drop to conductor 1 when the value is rational; keeps arithmetic on the
  // (frequent) rational values cheap without changing equality semantics.
  void shrink() {
    if (cond_ == 1) return;
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return;
    Rational r = c_[0];
    cond_ = 1;
    c_.assign(1, r);
  }

  struct Table {
    unsigned phi = 0;
    std::vector<Rational> phi_poly;                 // monic, degree phi
    std::vector<std::vector<Rational>> zeta_pow;    // zeta^e in power basis, e < max(n, 2*phi-1)
  };

  static void trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  }

  static std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }

  static std::vector<Rational> poly_sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out = a;
    if (out.size() < b.size()) out.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
  }

  static std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
      std::vector<Rational> a, const std::vector<Rational>& b) {
    std::vector<Rational> q;
    require(!b.empty(), "poly_divmod: division by zero polynomial");
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size()) {
      Rational f = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      q[shift] = f;
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
      trim(a);
      if (a.empty()) break;
    }
    return {q, a};
  }

  static const Table& table(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, Table> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    require(n >= 1, "CycloScalar: conductor must be positive");
    require(n <= kMaxConductor, "CycloScalar: conductor overflow beyond configured bound");

    Table t;
    t.phi = euler_phi(n);
    t.phi_poly = build_cyclotomic(n, cache);

    unsigned maxExp = std::max(n, 2 * t.phi - 1);
    t.zeta_pow.resize(maxExp);
    // zeta^0 .. zeta^{phi-1} are basis vectors; higher powers reduce through
    // zeta^phi = -(phi_poly without leading coefficient).
    for (unsigned e = 0; e < t.phi && e < maxExp; ++e) {
      std::vector<Rational> v(t.phi);
      v[e] = 1;
      t.zeta_pow[e] = std::move(v);
    }
    for (unsigned e = t.phi; e < maxExp; ++e) {
      const std::vector<Rational>& prev = t.zeta_pow[e - 1];
      std::vector<Rational> v(t.phi);
      // multiply prev by zeta
      for (unsigned k = 0; k + 1 < t.phi; ++k) v[k + 1] = prev[k];
      if (prev[t.phi - 1] != 0) {
        for (unsigned k = 0; k < t.phi; ++k) v[k] -= prev[t.phi - 1] * t.phi_poly[k];
      }
      t.zeta_pow[e] = std::move(v);
    }
    return cache.emplace(n, std::move(t)).first->second;
  }

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively
  // inside the shared cache.
  static std::vector<Rational> build_cyclotomic(unsigned n, std::map<unsigned, Table>& cache) {
    std::vector<Rational> numerator(n + 1);
    numerator[0] = -1;
    numerator[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      std::vector<Rational> phid;
      auto it = cache.find(d);
      if (it != cache.end()) {
        phid = it->second.phi_poly;
      } else {
        phid = build_cyclotomic(d, cache);
      }
      auto [q, r] = poly_divmod(numerator, phid);
      require(r.empty(), "cyclotomic polynomial division left a remainder");
      numerator = std::move(q);
    }
    return numerator;
  }

  unsigned cond_;
  std::vector<Rational> c_;
};

inline CycloScalar conj(const CycloScalar& x) { return x.conj(); }

// |x|^2 = x * conj(x); totally real and nonnegative.
inline CycloScalar norm_square(const CycloScalar& x) { return x * x.conj(); }

// Exact square root within the field for nonnegative rationals; nullopt when
// the value is not a perfect rational square (callers then carry the scale
// symbolically).
inline std::optional<CycloScalar> try_exact_sqrt(const CycloScalar& x) {
  if (!x.is_rational()) return std::nullopt;
  auto r = rational_sqrt(x.rational_value());
  if (!r) return std::nullopt;
  return CycloScalar(*r);
}

} // namespace hecke
