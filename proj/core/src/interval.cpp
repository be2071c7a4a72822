#include "limitcone/interval.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "limitcone/errors.hpp"

namespace limitcone {

Interval::Interval(double v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_d(lo_.get(), v, MPFR_RNDD);
  mpfr_set_d(hi_.get(), v, MPFR_RNDU);
}

Interval::Interval(const Rational& q, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_q(lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const QInterval& q, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_q(lo_.get(), q.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), q.hi.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::exact_int(long v, mpfr_prec_t prec) {
  Interval r(0.0, prec);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::from_endpoints(Real lo, Real hi) {
  Interval r;
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  if (mpfr_greater_p(r.lo_.get(), r.hi_.get()))
    fail(ErrorCode::Internal, "interval endpoints out of order");
  return r;
}

double Interval::mid_double() const {
  return 0.5 * (lo_.to_double() + hi_.to_double());
}

double Interval::width_double() const {
  Real w(prec());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double();
}

bool Interval::width_below(long bits) const {
  Real w(prec());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_zero_p(w.get())) return true;
  Real bound(prec());
  mpfr_set_ui_2exp(bound.get(), 1, -bits, MPFR_RNDD);
  return mpfr_lessequal_p(w.get(), bound.get());
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Interval::certainly_lt(const Interval& o) const {
  return mpfr_less_p(hi_.get(), o.lo_.get());
}

bool Interval::certainly_lt(double c) const {
  return mpfr_cmp_d(hi_.get(), c) < 0;
}

bool Interval::certainly_gt(double c) const {
  return mpfr_cmp_d(lo_.get(), c) > 0;
}

bool Interval::contains(const Interval& o) const {
  return mpfr_lessequal_p(lo_.get(), o.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), o.hi_.get());
}

bool Interval::intersects(const Interval& o) const {
  return !certainly_lt(o) && !o.certainly_lt(*this);
}

namespace {
mpfr_prec_t join_prec(const Interval& a, const Interval& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace

Interval Interval::operator+(const Interval& o) const {
  mpfr_prec_t p = join_prec(*this, o);
  Real lo(p), hi(p);
  mpfr_add(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::operator-(const Interval& o) const {
  mpfr_prec_t p = join_prec(*this, o);
  Real lo(p), hi(p);
  mpfr_sub(lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::operator*(const Interval& o) const {
  mpfr_prec_t p = join_prec(*this, o);
  Real lo(p), hi(p), t(p);
  // min/max over the four endpoint products, each rounded outward.
  mpfr_mul(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_mul(t.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  mpfr_mul(t.get(), hi_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  mpfr_mul(t.get(), hi_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);

  mpfr_mul(hi.get(), lo_.get(), o.lo_.get(), MPFR_RNDU);
  mpfr_mul(t.get(), lo_.get(), o.hi_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero())
    fail(ErrorCode::DivisionByZero, "interval division by interval containing 0");
  mpfr_prec_t p = join_prec(*this, o);
  Real lo(p), hi(p), t(p);
  mpfr_div(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_div(t.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  mpfr_div(t.get(), hi_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  mpfr_div(t.get(), hi_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);

  mpfr_div(hi.get(), lo_.get(), o.lo_.get(), MPFR_RNDU);
  mpfr_div(t.get(), lo_.get(), o.hi_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  mpfr_div(t.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  mpfr_div(t.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::operator-() const {
  Real lo(prec()), hi(prec());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) return -*this;
  Real lo(prec()), hi(prec()), t(prec());
  mpfr_set_zero(lo.get(), 1);
  mpfr_neg(t.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi_.get(), t.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_.get()) < 0) fail(ErrorCode::Internal, "sqrt of negative interval");
  Real lo(prec()), hi(prec());
  mpfr_sqrt(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), hi_.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_.get()) <= 0) fail(ErrorCode::Internal, "log of non-positive interval");
  Real lo(prec()), hi(prec());
  mpfr_log(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(hi.get(), hi_.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::acosh() const {
  if (mpfr_cmp_ui(lo_.get(), 1) < 0)
    fail(ErrorCode::Internal, "acosh of interval below 1");
  Real lo(prec()), hi(prec());
  mpfr_acosh(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_acosh(hi.get(), hi_.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::acos() const {
  // acos is decreasing; clamp arguments to [-1, 1] (callers guarantee the
  // true value lies inside, endpoints may poke out by rounding).
  Real a(prec()), b(prec());
  mpfr_set(a.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(b.get(), hi_.get(), MPFR_RNDU);
  if (mpfr_cmp_si(a.get(), -1) < 0) mpfr_set_si(a.get(), -1, MPFR_RNDN);
  if (mpfr_cmp_si(b.get(), 1) > 0) mpfr_set_si(b.get(), 1, MPFR_RNDN);
  Real lo(prec()), hi(prec());
  mpfr_acos(lo.get(), b.get(), MPFR_RNDD);
  mpfr_acos(hi.get(), a.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::atan() const {
  Real lo(prec()), hi(prec());
  mpfr_atan(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_atan(hi.get(), hi_.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::tan() const {
  Real lo(prec()), hi(prec());
  mpfr_tan(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_tan(hi.get(), hi_.get(), MPFR_RNDU);
  if (mpfr_greater_p(lo.get(), hi.get()))
    fail(ErrorCode::Internal, "tan interval crossed a pole");
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval Interval::pi(mpfr_prec_t prec) {
  Real lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

std::string Interval::str(int digits) const {
  return "[" + format_double(lo_.to_double(), digits) + ", " +
         format_double(hi_.to_double(), digits) + "]";
}

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  // normalize "-0" so outputs stay byte-stable across code paths
  if (std::strcmp(buf, "-0") == 0) return "0";
  return buf;
}

}  // namespace limitcone
