#pragma once

// Affine Iwahori-Hecke algebra of type A1 over Z[q, q^-1].
//
// Conventions (the paper-level choice of lattice identification is fixed
// here once and used consistently):
//   - The affine Weyl group is the infinite dihedral group <s0, s1>; words
//     are stored in the normal form (first letter, length).
//   - X = Z is the coroot lattice in coroot coordinates: the integer m
//     stands for the translation t_m by m alpha-dual, with t_1 = s0 s1 and
//     length l(t_m) = 2|m|. The finite reflection is s = s1 and acts by
//     m -> -m; the root alpha pairs with m as <alpha, m> = 2m.
//   - Theta_m = q^{-m} T_{t_m} for m >= 0, extended multiplicatively
//     (Theta_{-m} = q^m T_{t_m}^{-1}); the Bernstein basis is
//     {Theta_x T_w : x in Z, w in {e, s}}.
//   - In the cross relation the divisor 1 - Theta_{-alpha} is read at the
//     coroot lattice point, i.e. 1 - Theta_{-1}; with these normalizations
//     the displayed relation holds on the nose and all coefficients stay in
//     Z[q, q^-1].

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/laurent.hpp"

namespace hecke {

// Reduced word in the infinite dihedral group <s0, s1>, stored as the
// alternating string (first letter, length).
struct AffineWeylElement {
  unsigned char first = 0;
  unsigned len = 0;

  static AffineWeylElement identity() { return {}; }
  static AffineWeylElement generator(unsigned char i) { return {i, 1}; }

  bool is_identity() const { return len == 0; }
  unsigned length() const { return len; }

  unsigned char letter(unsigned k) const {
    require(k < len, "AffineWeylElement: letter index out of range");
    return static_cast<unsigned char>(first ^ (k & 1));
  }
  unsigned char last() const { return letter(len - 1); }

  AffineWeylElement times_generator(unsigned char s) const {
    if (len == 0) return {s, 1};
    if (last() == s) {
      AffineWeylElement out{first, len - 1};
      if (out.len == 0) out.first = 0;
      return out;
    }
    return {first, len + 1};
  }

  AffineWeylElement inverse() const {
    if (len == 0) return {};
    return {last(), len};
  }

  friend bool operator==(const AffineWeylElement& a, const AffineWeylElement& b) {
    return a.len == b.len && (a.len == 0 || a.first == b.first);
  }
  friend bool operator<(const AffineWeylElement& a, const AffineWeylElement& b) {
    if (a.len != b.len) return a.len < b.len;
    return a.len != 0 && a.first < b.first;
  }

  std::string to_string() const {
    if (len == 0) return "e";
    std::string out;
    for (unsigned k = 0; k < len; ++k) {
      if (k) out += " ";
      out += letter(k) == 0 ? "s0" : "s1";
    }
    return out;
  }
};

// Finite Z[q,q^-1]-combination of Iwahori-Matsumoto basis elements T_w.
class AffineHeckeElement {
public:
  AffineHeckeElement() = default;

  static AffineHeckeElement unit() { return T(AffineWeylElement::identity()); }

  static AffineHeckeElement T(const AffineWeylElement& w, const LaurentScalar& c = LaurentScalar(1)) {
    AffineHeckeElement out;
    out.add_term(w, c);
    return out;
  }

  const std::map<AffineWeylElement, LaurentScalar>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  unsigned max_length() const {
    unsigned m = 0;
    for (auto& [w, c] : c_) m = std::max(m, w.length());
    return m;
  }

  void add_term(const AffineWeylElement& w, const LaurentScalar& c) {
    if (c.is_zero()) return;
    auto it = c_.find(w);
    if (it == c_.end()) {
      c_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  friend AffineHeckeElement operator+(const AffineHeckeElement& a, const AffineHeckeElement& b) {
    AffineHeckeElement out = a;
    for (auto& [w, c] : b.c_) out.add_term(w, c);
    return out;
  }

  friend AffineHeckeElement operator-(const AffineHeckeElement& a, const AffineHeckeElement& b) {
    AffineHeckeElement out = a;
    for (auto& [w, c] : b.c_) out.add_term(w, -c);
    return out;
  }

  friend AffineHeckeElement operator*(const LaurentScalar& s, const AffineHeckeElement& a) {
    AffineHeckeElement out;
    for (auto& [w, c] : a.c_) out.add_term(w, s * c);
    return out;
  }

  friend bool operator==(const AffineHeckeElement& a, const AffineHeckeElement& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const AffineHeckeElement& a, const AffineHeckeElement& b) { return !(a == b); }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool firstterm = true;
    for (auto& [w, c] : c_) {
      if (!firstterm) os << " + ";
      firstterm = false;
      os << "(" << c.to_string() << ")*T[" << w.to_string() << "]";
    }
    return os.str();
  }

private:
  std::map<AffineWeylElement, LaurentScalar> c_;
};

// T_w * T_s with the braid/length and quadratic rules.
inline AffineHeckeElement multiply_by_generator(const AffineHeckeElement& a, unsigned char s) {
  LaurentScalar q = LaurentScalar::q_power(1);
  LaurentScalar qm1 = q - LaurentScalar(1);
  AffineHeckeElement out;
  for (auto& [w, c] : a.terms()) {
    AffineWeylElement ws = w.times_generator(s);
    if (ws.length() > w.length()) {
      out.add_term(ws, c);
    } else {
      out.add_term(w, c * qm1);
      out.add_term(ws, c * q);
    }
  }
  return out;
}

inline AffineHeckeElement hecke_multiply(const AffineHeckeElement& a, const AffineHeckeElement& b) {
  AffineHeckeElement out;
  for (auto& [w, c] : b.terms()) {
    AffineHeckeElement acc = c * a;
    for (unsigned k = 0; k < w.length(); ++k) acc = multiply_by_generator(acc, w.letter(k));
    out = out + acc;
  }
  return out;
}

// T_s^{-1} = q^{-1} T_s - (1 - q^{-1}) T_e, from the quadratic relation.
inline AffineHeckeElement hecke_invert_generator(unsigned char s) {
  AffineHeckeElement out;
  out.add_term(AffineWeylElement::generator(s), LaurentScalar::q_power(-1));
  out.add_term(AffineWeylElement::identity(), LaurentScalar::q_power(-1) - LaurentScalar(1));
  return out;
}

// Inverse of T_w as the reversed product of generator inverses.
inline AffineHeckeElement hecke_invert_word(const AffineWeylElement& w) {
  AffineHeckeElement out = AffineHeckeElement::unit();
  for (unsigned k = w.length(); k-- > 0;) out = hecke_multiply(out, hecke_invert_generator(w.letter(k)));
  return out;
}

// The lattice element m, i.e. the translation t_m (coroot coordinates).
struct LatticeElement {
  long long m = 0;
};

// word of t_m: (s0 s1)^m for m >= 0, (s1 s0)^{-m} for m < 0
inline AffineWeylElement translation_word(long long m) {
  if (m == 0) return AffineWeylElement::identity();
  if (m > 0) return {0, static_cast<unsigned>(2 * m)};
  return {1, static_cast<unsigned>(-2 * m)};
}

// Theta_x in the Iwahori-Matsumoto basis: q^{-x} T_{t_x} for dominant x,
// q^{-x1+x2} T_{t_{x1}} T_{t_{x2}}^{-1} in general (x = x1 - x2, both
// dominant); the result is independent of the decomposition.
inline AffineHeckeElement theta(const LatticeElement& x) {
  if (x.m >= 0)
    return LaurentScalar::q_power(static_cast<int>(-x.m)) *
           AffineHeckeElement::T(translation_word(x.m));
  return LaurentScalar::q_power(static_cast<int>(-x.m)) * hecke_invert_word(translation_word(-x.m));
}

// ---------------------------------------------------------------------------
// Bernstein side: elements as maps (x, w) -> coefficient with w in {e, s}.

struct BernsteinKey {
  long long x = 0;
  unsigned char w = 0; // 0 = e, 1 = s (the finite reflection s1)
  friend bool operator<(const BernsteinKey& a, const BernsteinKey& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.w < b.w;
  }
  friend bool operator==(const BernsteinKey& a, const BernsteinKey& b) {
    return a.x == b.x && a.w == b.w;
  }
};

class BernsteinElement {
public:
  BernsteinElement() = default;

  static BernsteinElement term(long long x, unsigned char w,
                               const LaurentScalar& c = LaurentScalar(1)) {
    BernsteinElement out;
    out.add_term({x, w}, c);
    return out;
  }

  const std::map<BernsteinKey, LaurentScalar>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  void add_term(const BernsteinKey& k, const LaurentScalar& c) {
    if (c.is_zero()) return;
    auto it = c_.find(k);
    if (it == c_.end()) {
      c_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  friend BernsteinElement operator+(const BernsteinElement& a, const BernsteinElement& b) {
    BernsteinElement out = a;
    for (auto& [k, c] : b.c_) out.add_term(k, c);
    return out;
  }

  friend BernsteinElement operator-(const BernsteinElement& a, const BernsteinElement& b) {
    BernsteinElement out = a;
    for (auto& [k, c] : b.c_) out.add_term(k, -c);
    return out;
  }

  friend bool operator==(const BernsteinElement& a, const BernsteinElement& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const BernsteinElement& a, const BernsteinElement& b) { return !(a == b); }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : c_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.to_string() << ")*Th[" << k.x << "]";
      if (k.w) os << "*T[s]";
    }
    return os.str();
  }

private:
  std::map<BernsteinKey, LaurentScalar> c_;
};

// D(y) = (Theta_y - Theta_{-y}) / (1 - Theta_{-1}) as a finite geometric sum
// of Theta exponents (with unit coefficients); exactness is checked by the
// cleared-denominator test below.
inline std::vector<long long> bernstein_correction_exponents(long long y) {
  std::vector<long long> out;
  if (y > 0)
    for (long long e = y; e >= -y + 1; --e) out.push_back(e);
  // negative y handled by the caller through the sign
  if (y < 0)
    for (long long e = -y; e >= y + 1; --e) out.push_back(e);
  return out;
}

// T_s Theta_y = Theta_{-y} T_s + (q-1) D(y) with D as above.
inline BernsteinElement bernstein_multiply(const BernsteinElement& a, const BernsteinElement& b) {
  LaurentScalar qm1 = LaurentScalar::q_power(1) - LaurentScalar(1);
  BernsteinElement out;
  for (auto& [ka, ca] : a.terms())
    for (auto& [kb, cb] : b.terms()) {
      LaurentScalar c = ca * cb;
      if (ka.w == 0) {
        out.add_term({ka.x + kb.x, kb.w}, c);
        continue;
      }
      // (Theta_{ka.x} T_s)(Theta_{kb.x} T_{kb.w})
      long long y = kb.x;
      // principal part Theta_{ka.x - y} T_s T_{kb.w}
      if (kb.w == 0) {
        out.add_term({ka.x - y, 1}, c);
      } else {
        out.add_term({ka.x - y, 1}, c * qm1);
        out.add_term({ka.x - y, 0}, c * LaurentScalar::q_power(1));
      }
      // correction (q-1) Theta_{ka.x} D(y) T_{kb.w}
      int sign = y >= 0 ? 1 : -1;
      for (long long e : bernstein_correction_exponents(y)) {
        LaurentScalar cc = c * qm1;
        if (sign < 0) cc = -cc;
        out.add_term({ka.x + e, kb.w}, cc);
      }
    }
  return out;
}

// Iwahori-Matsumoto -> Bernstein basis conversion by length recursion:
// T_{s1} = Theta_0 T_s and T_{s0} = Theta_1 T_s - (q-1) Theta_1.
inline BernsteinElement to_bernstein(const AffineHeckeElement& a) {
  static const BernsteinElement Bs1 = BernsteinElement::term(0, 1);
  static const BernsteinElement Bs0 = [] {
    BernsteinElement b = BernsteinElement::term(1, 1);
    b.add_term({1, 0}, -(LaurentScalar::q_power(1) - LaurentScalar(1)));
    return b;
  }();

  BernsteinElement out;
  std::map<AffineWeylElement, BernsteinElement> cache;
  cache[AffineWeylElement::identity()] = BernsteinElement::term(0, 0);

  for (auto& [w, c] : a.terms()) {
    // build B(T_w) along prefixes
    AffineWeylElement prefix = AffineWeylElement::identity();
    BernsteinElement acc = cache[prefix];
    for (unsigned k = 0; k < w.length(); ++k) {
      prefix = prefix.times_generator(w.letter(k));
      auto it = cache.find(prefix);
      if (it != cache.end()) {
        acc = it->second;
        continue;
      }
      acc = bernstein_multiply(acc, w.letter(k) == 0 ? Bs0 : Bs1);
      cache[prefix] = acc;
    }
    for (auto& [k2, c2] : acc.terms()) out.add_term(k2, c * c2);
  }
  return out;
}

// Bernstein -> Iwahori-Matsumoto by expanding Theta and T_s.
inline AffineHeckeElement from_bernstein(const BernsteinElement& b) {
  AffineHeckeElement out;
  for (auto& [k, c] : b.terms()) {
    AffineHeckeElement t = theta(LatticeElement{k.x});
    if (k.w) t = hecke_multiply(t, AffineHeckeElement::T(AffineWeylElement::generator(1)));
    out = out + c * t;
  }
  return out;
}

// The bullet anti-involution: T_n -> T_{n^{-1}} on the finite generators and
// Theta_x -> Theta_x, extended anti-multiplicatively. Computed through the
// Bernstein basis: (Theta_x T_w)^bullet = T_{w^{-1}} Theta_x.
inline AffineHeckeElement bullet(const AffineHeckeElement& a) {
  BernsteinElement b = to_bernstein(a);
  BernsteinElement out;
  for (auto& [k, c] : b.terms()) {
    BernsteinElement flipped = BernsteinElement::term(k.x, 0);
    if (k.w) flipped = bernstein_multiply(BernsteinElement::term(0, 1), flipped);
    for (auto& [k2, c2] : flipped.terms()) out.add_term(k2, c * c2);
  }
  return from_bernstein(out);
}

// The star anti-involution T_w -> T_{w^{-1}} (coefficients are fixed: q is
// real and the coefficients are integer Laurent polynomials).
inline AffineHeckeElement star_affine(const AffineHeckeElement& a) {
  AffineHeckeElement out;
  for (auto& [w, c] : a.terms()) out.add_term(w.inverse(), c);
  return out;
}

// The involution a: for A1 it fixes Theta_x (since -w0 = id on the lattice)
// and fixes the finite Weyl representatives (W is abelian), hence acts as the
// identity on the algebra.
inline AffineHeckeElement a_involution_affine(const AffineHeckeElement& y) { return y; }

// The Bernstein cross relation, verified on the Iwahori-Matsumoto side:
//   Theta_x T_s = T_s Theta_{-x} + (q-1) (Theta_x - Theta_{-x})/(1 - Theta_{-1}),
// with the quotient evaluated by exact geometric expansion and re-checked in
// cleared-denominator form.
inline bool verify_bernstein_relation(const LatticeElement& x) {
  LaurentScalar qm1 = LaurentScalar::q_power(1) - LaurentScalar(1);
  AffineHeckeElement Ts = AffineHeckeElement::T(AffineWeylElement::generator(1));

  AffineHeckeElement lhs = hecke_multiply(theta(x), Ts);
  AffineHeckeElement rhs = hecke_multiply(Ts, theta(LatticeElement{-x.m}));
  int sign = x.m >= 0 ? 1 : -1;
  AffineHeckeElement correction;
  for (long long e : bernstein_correction_exponents(x.m)) {
    AffineHeckeElement th = theta(LatticeElement{e});
    correction = sign > 0 ? correction + th : correction - th;
  }
  AffineHeckeElement rhs_total = rhs + qm1 * correction;
  if (lhs != rhs_total) return false;

  // cleared-denominator form of the quotient: D(x) (1 - Theta_{-1}) =
  // Theta_x - Theta_{-x} in the commutative Theta-subalgebra
  std::map<long long, long long> D;
  for (long long e : bernstein_correction_exponents(x.m)) D[e] += sign;
  std::map<long long, long long> cleared;
  for (auto& [e, c] : D) {
    cleared[e] += c;
    cleared[e - 1] -= c;
  }
  std::map<long long, long long> expect;
  if (x.m != 0) {
    expect[x.m] += 1;
    expect[-x.m] -= 1;
  }
  for (auto it = cleared.begin(); it != cleared.end();) {
    if (it->second == 0)
      it = cleared.erase(it);
    else
      ++it;
  }
  return cleared == expect;
}

// bullet(y) = T_{n0}^{-1} a(y^*) T_{n0} with n0 = s1 for A1.
inline bool verify_bullet_star_relation(const AffineHeckeElement& y, unsigned length_bound = 8) {
  require(y.max_length() <= length_bound, "verify_bullet_star_relation: support exceeds the bound");
  AffineHeckeElement Ts = AffineHeckeElement::T(AffineWeylElement::generator(1));
  AffineHeckeElement rhs = hecke_multiply(
      hecke_multiply(hecke_invert_generator(1), a_involution_affine(star_affine(y))), Ts);
  return bullet(y) == rhs;
}

// ---------------------------------------------------------------------------
// Small expression grammar for the CLI: tokens T[s0], T[s1], Th[x], integer
// Laurent coefficients (integers, q, q^k), +, -, *, parentheses.
class AffineExpressionParser {
public:
  explicit AffineExpressionParser(std::string text) : text_(std::move(text)) {}

  AffineHeckeElement parse() {
    AffineHeckeElement out = parse_sum();
    skip_space();
    require(pos_ == text_.size(), "affine parser: trailing input at position " + std::to_string(pos_));
    return out;
  }

private:
  AffineHeckeElement parse_sum() {
    AffineHeckeElement acc = parse_product();
    while (true) {
      skip_space();
      if (peek() == '+') {
        ++pos_;
        acc = acc + parse_product();
      } else if (peek() == '-') {
        ++pos_;
        acc = acc - parse_product();
      } else {
        return acc;
      }
    }
  }

  AffineHeckeElement parse_product() {
    AffineHeckeElement acc = parse_atom();
    while (true) {
      skip_space();
      if (peek() == '*') {
        ++pos_;
        acc = hecke_multiply(acc, parse_atom());
      } else {
        return acc;
      }
    }
  }

  AffineHeckeElement parse_atom() {
    skip_space();
    if (peek() == '(') {
      ++pos_;
      AffineHeckeElement inner = parse_sum();
      skip_space();
      require(peek() == ')', "affine parser: expected ')'");
      ++pos_;
      return inner;
    }
    if (text_.compare(pos_, 2, "T[") == 0) {
      pos_ += 2;
      skip_space();
      AffineWeylElement w = AffineWeylElement::identity();
      while (true) {
        skip_space();
        if (text_.compare(pos_, 2, "s0") == 0) {
          w = w.times_generator(0);
          pos_ += 2;
        } else if (text_.compare(pos_, 2, "s1") == 0) {
          w = w.times_generator(1);
          pos_ += 2;
        } else if (peek() == 'e') {
          ++pos_;
        } else {
          break;
        }
      }
      skip_space();
      require(peek() == ']', "affine parser: expected ']' in T[...]");
      ++pos_;
      return AffineHeckeElement::T(w);
    }
    if (text_.compare(pos_, 3, "Th[") == 0) {
      pos_ += 3;
      long long x = parse_integer();
      skip_space();
      require(peek() == ']', "affine parser: expected ']' in Th[...]");
      ++pos_;
      return theta(LatticeElement{x});
    }
    if (peek() == 'q') {
      ++pos_;
      int e = 1;
      if (peek() == '^') {
        ++pos_;
        e = static_cast<int>(parse_integer());
      }
      return LaurentScalar::q_power(e) * AffineHeckeElement::unit();
    }
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '-') {
      long long v = parse_integer();
      return LaurentScalar(v) * AffineHeckeElement::unit();
    }
    fail("affine parser: unexpected token at position " + std::to_string(pos_));
  }

  long long parse_integer() {
    skip_space();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    require(pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])),
            "affine parser: expected an integer");
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::stoll(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string text_;
  std::size_t pos_ = 0;
};

inline AffineHeckeElement parse_affine_expression(const std::string& text) {
  return AffineExpressionParser(text).parse();
}

} // namespace hecke
