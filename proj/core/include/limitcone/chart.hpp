#pragma once

#include "limitcone/interval.hpp"

namespace limitcone {

// Boundary circle chart. A point x of R u {inf} sits at angle
//   angle(x) = atan(x)/pi   (mod 1),     angle(inf) = 1/2.
// Angles are handled as *lifted* intervals in R of width < 1; two lifts
// describe the same circle point iff they differ by an integer.
namespace chart {

// Angle of the projective boundary point (u : v). Either v or u must be
// bounded away from zero; both branches agree mod 1 on overlap.
Interval angle_of_point(const Interval& u, const Interval& v);

// Angle of a finite point.
Interval angle_of_value(const Interval& x);

// Fold a lifted angle into [0, 1).
double fold(double lifted);

// Circular distance of two folded angles.
double circle_distance(double a, double b);

// Dyadic closed arc {angle : |angle - center| <= radius (mod 1)}.
struct Arc {
  Rational center;
  Rational radius;
};

// Certified membership of a lifted angle interval in a dyadic arc.
bool arc_contains(const Arc& arc, const Interval& lifted_angle);

// Do two dyadic arcs overlap (as subsets of the circle)?
bool arcs_overlap(const Arc& a, const Arc& b);

// Inverse chart: the finite point at dyadic angle t (t != 1/2 mod 1).
Interval point_at_angle(const Rational& t, mpfr_prec_t prec);

}  // namespace chart
}  // namespace limitcone
