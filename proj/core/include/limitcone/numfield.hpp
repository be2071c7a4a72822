#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "limitcone/interval.hpp"
#include "limitcone/polynomial.hpp"

namespace limitcone {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// A fixed totally real number field Q[x]/(minpoly) with all real embeddings
// evaluable to certified intervals. Root index i (1-based) refers to the
// i-th real root of minpoly in ascending order; which root acts as the
// identity embedding is a choice the group layer records, not the field.
class NumberField {
 public:
  // Validates: monic, squarefree, totally real, and not provably reducible.
  // Reducibility detection is complete through degree 5 (any factorization
  // has a factor of degree <= 2); higher degrees keep a partial check and
  // an "irreducibility unverified" flag.
  static FieldPtr create(const QPoly& minpoly);

  int degree() const { return poly::degree(minpoly_); }
  const QPoly& minpoly() const { return minpoly_; }
  bool irreducibility_verified() const { return irreducible_verified_; }

  // Certified isolating interval of root index (refines the shared cache
  // until width <= eps).
  QInterval root_interval(int index, const Rational& eps) const;
  QInterval root_interval(int index) const;

  // theta^k reduced mod minpoly, for k in [0, 2*degree-2].
  const std::vector<Rational>& theta_power(int k) const;

 private:
  NumberField() = default;

  QPoly minpoly_;
  bool irreducible_verified_ = false;
  std::vector<std::vector<Rational>> powers_;  // k = 0 .. 2n-2
  mutable std::mutex mu_;
  mutable std::vector<poly::RootInterval> roots_;

  friend class FieldElement;
};

enum class Ordering { Less, Equal, Greater };

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<Rational> coords);
  static FieldElement rational(FieldPtr field, const Rational& value);
  static FieldElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  const Rational& rational_part() const { return coords_[0]; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator+(const Rational& c) const;
  FieldElement operator-(const Rational& c) const { return *this + Rational(-c); }
  FieldElement operator*(const Rational& c) const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement inverse() const;

  // Exact sign of phi_index(*this); decidable in finitely many refinement
  // steps for nonzero elements.
  int sign_at(int root_index) const;

  // Certified interval of width <= 2^-bits around phi_index(*this).
  QInterval embed_q(int root_index, long bits) const;
  Interval embed(int root_index, long bits) const;

  std::uint64_t hash(std::uint64_t seed) const;
  std::string str(const std::string& var = "th") const;

 private:
  QPoly as_poly() const { return poly::make(coords_); }
  void check_same_field(const FieldElement& o) const;

  FieldPtr field_;
  std::vector<Rational> coords_;
};

// Exact order between phi_i(a) and phi_i(b).
Ordering compare_at(const FieldElement& a, const FieldElement& b, int root_index);
// Exact order between phi_i(e) and phi_j(e); Equal is certified via the
// characteristic polynomial of e, not by interval coincidence.
Ordering compare_embeddings(const FieldElement& e, int i, int j);

// tr(g^l) from t = tr(g) via tau_0 = 2, tau_1 = t, tau_{l+1} = t*tau_l - tau_{l-1}.
FieldElement chebyshev_trace(long l, const FieldElement& t);

}  // namespace limitcone
