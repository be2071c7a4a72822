#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace limitcone {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "3", "-7/2", "0.5"-free rational strings (integer or num/den form).
Rational parse_rational(const std::string& s);

std::string rational_str(const Rational& q);

// Closed rational interval, the workhorse of exact sign determination and
// root refinement. Not a general interval type; just what Sturm + Horner
// evaluation need.
struct QInterval {
  Rational lo, hi;

  QInterval() = default;
  QInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  static QInterval point(const Rational& v) { return {v, v}; }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  // Sign if determined (+1/-1), 0 when the interval straddles or touches 0.
  int known_sign() const {
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
    return 0;
  }

  QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  QInterval operator*(const QInterval& o) const;
  QInterval operator+(const Rational& c) const { return {lo + c, hi + c}; }
  QInterval scaled(const Rational& c) const {
    return sgn(c) >= 0 ? QInterval{lo * c, hi * c} : QInterval{hi * c, lo * c};
  }
};

// 64-bit mixing hash over the canonical GMP representation; used by the
// enumeration dedup store.
std::uint64_t hash_rational(const Rational& q, std::uint64_t seed);

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace limitcone
