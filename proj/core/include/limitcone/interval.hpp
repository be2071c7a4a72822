#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "limitcone/rational.hpp"

namespace limitcone {

// Thin RAII wrapper over mpfr_t so Interval can hold two endpoints with
// value semantics.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// Certified real interval [lo, hi] with outward (directed) rounding on every
// operation. All transcendental evaluations in the project go through this
// type; exact (rational/field) computations stay in QInterval or the field
// layer.
class Interval {
 public:
  Interval() : Interval(0.0, 64) {}
  Interval(double v, mpfr_prec_t prec);
  Interval(const Rational& q, mpfr_prec_t prec);
  Interval(const QInterval& q, mpfr_prec_t prec);
  static Interval exact_int(long v, mpfr_prec_t prec);
  static Interval from_endpoints(Real lo, Real hi);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t prec() const { return lo_.prec(); }

  double mid_double() const;
  double width_double() const;
  // width <= 2^-bits ?
  bool width_below(long bits) const;
  bool contains_zero() const;
  bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()); }

  // Certified comparisons; false means "not certifiable from these bounds",
  // not a negative fact.
  bool certainly_lt(const Interval& o) const;
  bool certainly_gt(const Interval& o) const { return o.certainly_lt(*this); }
  bool certainly_lt(double c) const;
  bool certainly_gt(double c) const;
  bool contains(const Interval& o) const;  // o subseteq this
  bool intersects(const Interval& o) const;

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;  // o must exclude 0
  Interval operator-() const;
  Interval abs() const;

  Interval sqrt() const;   // lo >= 0 required
  Interval log() const;    // lo > 0 required
  Interval acosh() const;  // lo >= 1 required
  Interval acos() const;   // [-1, 1] (clamped at the ends)
  Interval atan() const;
  Interval tan() const;    // interval inside (-pi/2, pi/2)

  static Interval pi(mpfr_prec_t prec);

  std::string str(int digits = 17) const;

 private:
  Real lo_, hi_;
};

// Shared decimal formatting so every CSV/JSON/SVG writer prints identically.
std::string format_double(double v, int digits);

}  // namespace limitcone
