#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "hecke/error.hpp"
#include "hecke/numeric.hpp"

namespace hecke {

// Element of Z[q, q^-1] as a sparse exponent -> coefficient map; zero
// coefficients are never stored.
class LaurentScalar {
public:
  LaurentScalar() = default;

  /*implicit*/ LaurentScalar(long long c) {
    if (c != 0) c_[0] = c;
  }

  static LaurentScalar q_power(int k, long long coeff = 1) {
    LaurentScalar x;
    if (coeff != 0) x.c_[k] = coeff;
    return x;
  }

  const std::map<int, long long>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  int min_degree() const {
    require(!c_.empty(), "LaurentScalar: degree of zero");
    return c_.begin()->first;
  }
  int max_degree() const {
    require(!c_.empty(), "LaurentScalar: degree of zero");
    return c_.rbegin()->first;
  }

  friend LaurentScalar operator+(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar out = a;
    for (auto& [k, v] : b.c_) out.add_term(k, v);
    return out;
  }

  friend LaurentScalar operator-(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar out = a;
    for (auto& [k, v] : b.c_) out.add_term(k, -v);
    return out;
  }

  LaurentScalar operator-() const {
    LaurentScalar out;
    for (auto& [k, v] : c_) out.c_[k] = -v;
    return out;
  }

  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar out;
    for (auto& [i, u] : a.c_)
      for (auto& [j, v] : b.c_) out.add_term(i + j, u * v);
    return out;
  }

  LaurentScalar& operator+=(const LaurentScalar& o) { return *this = *this + o; }
  LaurentScalar& operator-=(const LaurentScalar& o) { return *this = *this - o; }
  LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }

  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LaurentScalar& a, const LaurentScalar& b) { return !(a == b); }

  // Evaluate at a rational q value (used for specialization checks).
  Rational evaluate(const Rational& q) const {
    Rational out = 0;
    for (auto& [k, v] : c_) {
      Rational p = 1;
      for (int i = 0; i < (k >= 0 ? k : -k); ++i) p *= q;
      if (k < 0) p = Rational(1) / p;
      out += Rational(v) * p;
    }
    return out;
  }

  // Sparse "coeff*q^k" terms sorted by exponent.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : c_) {
      long long a = v;
      if (first) {
        if (a < 0) { os << "-"; a = -a; }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      if (k == 0) {
        os << a;
      } else {
        if (a != 1) os << a << "*";
        os << "q";
        if (k != 1) os << "^" << k;
      }
    }
    return os.str();
  }

private:
  void add_term(int k, long long v) {
    auto it = c_.find(k);
    if (it == c_.end()) {
      if (v != 0) c_[k] = v;
    } else {
      it->second += v;
      if (it->second == 0) c_.erase(it);
    }
  }

  std::map<int, long long> c_;
};

} // namespace hecke
