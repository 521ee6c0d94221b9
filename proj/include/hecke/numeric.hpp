#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>

#include "hecke/error.hpp"

namespace hecke {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

// Integer square root by bisection; exact for cpp_int.
inline Integer isqrt(const Integer& n) {
  require(n >= 0, "isqrt of negative integer");
  if (n < 2) return n;
  Integer lo = 1, hi = n;
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    if (mid * mid <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// sqrt in Q when the argument is a perfect square; nullopt otherwise.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Integer n = num(r), d = den(r);
  Integer sn = isqrt(n), sd = isqrt(d);
  if (sn * sn == n && sd * sd == d) return Rational(sn, sd);
  return std::nullopt;
}

inline unsigned euler_phi(unsigned n) {
  unsigned result = n, m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

} // namespace hecke
