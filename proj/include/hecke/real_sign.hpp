#pragma once

// Exact sign determination for totally real cyclotomic scalars under the
// canonical embedding zeta_n -> exp(2*pi*i/n), by rational interval
// arithmetic: sigma(x) = sum_k c_k cos(2*pi*k/n) is enclosed in a rational
// interval that is refined until zero is excluded (x = 0 is decided
// symbolically first, so the loop terminates for every valid input).

#include <vector>

#include "hecke/cyclotomic.hpp"
#include "hecke/error.hpp"
#include "hecke/numeric.hpp"

namespace hecke {

namespace detail {

struct RatInterval {
  Rational lo, hi;
};

// pi to 50 fractional digits; lo < pi < hi.
inline const RatInterval& pi_interval() {
  static const RatInterval pi = [] {
    Integer scale = 1;
    for (int i = 0; i < 50; ++i) scale *= 10;
    // 3.14159265358979323846264338327950288419716939937510<58...>
    Integer digits("314159265358979323846264338327950288419716939937510");
    return RatInterval{Rational(digits, scale), Rational(digits + 1, scale)};
  }();
  return pi;
}

// Round interval endpoints outward to denominator 10^digits (keeps rational
// sizes bounded through repeated powering without losing rigor).
inline RatInterval outward_round(const RatInterval& x, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Integer lo_num = num(x.lo) * scale / den(x.lo);
  if (Rational(lo_num, scale) > x.lo) lo_num -= 1;
  Integer hi_num = num(x.hi) * scale / den(x.hi);
  if (Rational(hi_num, scale) < x.hi) hi_num += 1;
  return {Rational(lo_num, scale), Rational(hi_num, scale)};
}

// cos(t) enclosure for rational t in [0, pi/2] via the alternating Taylor
// series with `terms` summands; truncation error is bounded by the first
// omitted term.
inline RatInterval cos_enclosure_principal(const Rational& t, int terms) {
  Rational t2 = t * t;
  Rational sum = 1;
  Rational term = 1;
  for (int j = 1; j < terms; ++j) {
    term *= t2;
    term /= Rational((2 * j - 1) * (2 * j));
    if (j % 2 == 1)
      sum -= term;
    else
      sum += term;
  }
  Rational tail = term * t2 / Rational((2 * terms - 1) * (2 * terms));
  return {sum - tail, sum + tail};
}

// cos(2*pi*k/n) enclosure.
inline RatInterval cos_two_pi_frac(unsigned k, unsigned n, int terms, int digits) {
  k %= n;
  unsigned k1 = (2 * k > n) ? n - k : k; // cos is even and 2*pi periodic
  int sign = 1;
  Rational frac;
  if (4 * k1 <= n) {
    frac = Rational(2 * k1, n); // angle = pi * frac <= pi/2
  } else {
    sign = -1;
    frac = Rational(static_cast<long long>(n) - 2 * static_cast<long long>(k1), n);
  }
  const RatInterval& pi = pi_interval();
  RatInterval t{frac * pi.lo, frac * pi.hi};
  t = outward_round(t, digits);
  // cos is decreasing on [0, pi/2]
  RatInterval at_lo = cos_enclosure_principal(t.lo, terms);
  RatInterval at_hi = cos_enclosure_principal(t.hi, terms);
  RatInterval out{at_hi.lo, at_lo.hi};
  if (sign < 0) out = {-out.hi, -out.lo};
  return outward_round(out, digits);
}

} // namespace detail

// Sign of a totally real cyclotomic scalar under the canonical embedding:
// -1, 0, or +1. Errors on non-real input.
inline int real_sign(const CycloScalar& x) {
  require(x.is_totally_real(), "real_sign: scalar is not totally real");
  if (x.is_zero()) return 0;
  if (x.is_rational()) {
    Rational r = x.rational_value();
    return r > 0 ? 1 : -1;
  }
  unsigned n = x.conductor();
  const std::vector<Rational>& c = x.coefficients();
  for (int terms = 8; terms <= 64; terms *= 2) {
    int digits = 40;
    Rational lo = 0, hi = 0;
    for (unsigned k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      detail::RatInterval ck = detail::cos_two_pi_frac(k, n, terms, digits);
      if (c[k] > 0) {
        lo += c[k] * ck.lo;
        hi += c[k] * ck.hi;
      } else {
        lo += c[k] * ck.hi;
        hi += c[k] * ck.lo;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  fail("real_sign: could not separate value from zero at maximum precision");
}

inline bool is_positive_real(const CycloScalar& x) { return real_sign(x) > 0; }

} // namespace hecke
