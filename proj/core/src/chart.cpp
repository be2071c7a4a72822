#include "limitcone/chart.hpp"

#include <cmath>

#include "limitcone/errors.hpp"

namespace limitcone {
namespace chart {

Interval angle_of_point(const Interval& u, const Interval& v) {
  mpfr_prec_t p = std::max(u.prec(), v.prec());
  if (!v.contains_zero())
    return (u / v).atan() / Interval::pi(p);
  if (!u.contains_zero()) {
    Interval half(Rational(1, 2), p);
    return half - (v / u).atan() / Interval::pi(p);
  }
  fail(ErrorCode::Internal, "boundary point (u:v) unresolved at this precision");
}

Interval angle_of_value(const Interval& x) {
  return x.atan() / Interval::pi(x.prec());
}

double fold(double lifted) {
  double f = lifted - std::floor(lifted);
  if (f >= 1.0) f = 0.0;
  return f;
}

double circle_distance(double a, double b) {
  double d = std::fabs(fold(a) - fold(b));
  return std::min(d, 1.0 - d);
}

bool arc_contains(const Arc& arc, const Interval& lifted_angle) {
  // unique integer shift candidate from the midpoints
  double shift = mpq_get_d(arc.center.get_mpq_t()) - lifted_angle.mid_double();
  long k = std::lround(shift);
  mpfr_prec_t p = lifted_angle.prec();
  Interval shifted = lifted_angle + Interval::exact_int(k, p);
  Interval lo(arc.center - arc.radius, p);
  Interval hi(arc.center + arc.radius, p);
  return mpfr_lessequal_p(lo.hi().get(), shifted.lo().get()) &&
         mpfr_lessequal_p(shifted.hi().get(), hi.lo().get());
}

bool arcs_overlap(const Arc& a, const Arc& b) {
  Rational d = a.center - b.center;
  // reduce |d| mod 1 into [0, 1/2]
  Integer n;
  mpz_fdiv_q(n.get_mpz_t(), d.get_num().get_mpz_t(), d.get_den().get_mpz_t());
  d -= Rational(n);
  if (d > Rational(1, 2)) d = 1 - d;
  return d <= a.radius + b.radius;
}

Interval point_at_angle(const Rational& t, mpfr_prec_t prec) {
  Interval angle(t, prec);
  return (angle * Interval::pi(prec)).tan();
}

}  // namespace chart
}  // namespace limitcone
