#pragma once

#include <optional>
#include <string>
#include <vector>

#include "limitcone/rational.hpp"

namespace limitcone {

// Dense univariate polynomial over Q, coefficients in ascending degree.
// The zero polynomial is the empty vector.
using QPoly = std::vector<Rational>;

namespace poly {

QPoly make(std::vector<Rational> coeffs);  // trims trailing zeros
int degree(const QPoly& p);                // -1 for the zero polynomial
bool is_zero(const QPoly& p);
bool is_monic(const QPoly& p);
Rational leading(const QPoly& p);

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rational& c);
QPoly neg(const QPoly& a);
// Euclidean division; b != 0.
void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem);
QPoly derivative(const QPoly& p);
QPoly monic(const QPoly& p);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic gcd
// g = gcd(a,b) together with u,v s.t. u*a + v*b = g.
QPoly gcd_ext(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v);
QPoly squarefree_part(const QPoly& p);

Rational eval(const QPoly& p, const Rational& x);
QInterval eval(const QPoly& p, const QInterval& x);
int sign_at(const QPoly& p, const Rational& x);

// Exact square root of a perfect-square polynomial (monic even-degree
// input); nullopt when p is not a perfect square.
std::optional<QPoly> sqrt_exact(const QPoly& p);

Rational resultant(const QPoly& a, const QPoly& b);

// All coefficients scaled to integers, content removed, positive leading
// coefficient. Used by the irreducibility checks.
QPoly primitive_integer(const QPoly& p);

std::string str(const QPoly& p, const std::string& var = "x");

// "x^2-x-1", "x^2 - 5", "2*x^3+1/2*x-3"; ascending or any order of terms.
QPoly parse(const std::string& s);

// ---- Sturm machinery -------------------------------------------------

struct SturmChain {
  std::vector<QPoly> seq;
  // sign variation count at x (limits handled via leading behavior)
  int variations_at(const Rational& x) const;
  int variations_at_minus_inf() const;
  int variations_at_plus_inf() const;
};

SturmChain sturm_chain(const QPoly& squarefree);

// Number of distinct real roots in (a, b].
int count_roots(const SturmChain& chain, const Rational& a, const Rational& b);
int count_real_roots(const QPoly& squarefree);

// An integer B (a power of two) with all real roots in (-B, B).
Rational cauchy_root_bound(const QPoly& p);

struct RootInterval {
  Rational lo, hi;    // dyadic endpoints, sign(p(lo)) * sign(p(hi)) < 0 unless exact
  bool exact = false; // root equals lo == hi
  QInterval as_qinterval() const { return {lo, hi}; }
};

// Isolating intervals for all real roots of a squarefree polynomial, in
// ascending order. Endpoints dyadic; each open interval contains exactly
// one root (or is an exact rational root).
std::vector<RootInterval> isolate_real_roots(const QPoly& squarefree);

// One bisection step; keeps the sign-change invariant. No-op when exact.
void refine_root(const QPoly& p, RootInterval& r);
// Refine until width <= eps.
void refine_root_to(const QPoly& p, RootInterval& r, const Rational& eps);

}  // namespace poly
}  // namespace limitcone
