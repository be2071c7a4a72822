#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "limitcone/chart.hpp"
#include "limitcone/numfield.hpp"

namespace limitcone {

// 2x2 interval matrix; used both for embedded Moebius factors (det ~ 1) and
// for anti-Moebius reflection factors (det ~ -1, z -> M(conj z)).
struct Mat2 {
  Interval a, b, c, d;
  Mat2 mul(const Mat2& o) const;
  Interval det() const { return a * d - b * c; }
  Interval trace() const { return a + d; }
};

enum class ClassKind { Identity, EllipticFinite, EllipticInfinite, Parabolic, Hyperbolic };

struct ElementClass {
  ClassKind kind = ClassKind::Identity;
  long order = 0;            // EllipticFinite: projective order
  bool up_to_bound = false;  // EllipticInfinite by bound exhaustion only
  long order_bound = 0;

  bool is_elliptic() const {
    return kind == ClassKind::EllipticFinite || kind == ClassKind::EllipticInfinite;
  }
};

const char* class_kind_name(ClassKind k);

// Determinant-one projective matrix over a number field, sign-canonicalized:
// the first nonzero entry of (a, b, c, d) is positive under the designated
// identity embedding.
class MoebiusElement {
 public:
  MoebiusElement() = default;
  // Validates det == 1 exactly, then canonicalizes.
  MoebiusElement(FieldElement a, FieldElement b, FieldElement c, FieldElement d,
                 int phi1_root);
  static MoebiusElement identity(const FieldPtr& field, int phi1_root);

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const FieldElement& c() const { return c_; }
  const FieldElement& d() const { return d_; }
  const FieldPtr& field() const { return a_.field(); }
  int phi1_root() const { return phi1_root_; }

  FieldElement trace() const { return a_ + d_; }  // signed, canonical representative
  bool is_identity() const;

  MoebiusElement operator*(const MoebiusElement& o) const;
  MoebiusElement inverse() const;
  MoebiusElement pow(long n) const;
  bool operator==(const MoebiusElement& o) const;
  bool operator!=(const MoebiusElement& o) const { return !(*this == o); }
  std::uint64_t hash(std::uint64_t seed) const;

  // Entrywise certified embedding at a root index.
  Mat2 factor(int root_index, long bits) const;

  std::string str() const;

 private:
  static MoebiusElement unchecked(FieldElement a, FieldElement b, FieldElement c,
                                  FieldElement d, int phi1_root);
  void canonicalize();

  FieldElement a_, b_, c_, d_;
  int phi1_root_ = 1;
};

// Exact trace trichotomy at one embedding. Elliptic order is detected by the
// trace recursion (tau_k = +-2 iff g^k = +-I); a hyperbolic Galois conjugate
// rules finite order out without any scan.
ElementClass classify(const MoebiusElement& g, int root_index, long order_bound = 200);

enum class TupleClass { Identity, Elliptic, Parabolic, Hyperbolic, Mixed };
const char* tuple_class_name(TupleClass t);

// The r-tuple of Galois-conjugate factors of one exact element.
struct IsometryTuple {
  MoebiusElement source;
  std::vector<int> embedding_order;  // root indices, identity embedding first
  std::vector<Mat2> factors;
  std::vector<ElementClass> classes;
  TupleClass tuple_class = TupleClass::Identity;
};

IsometryTuple tuple_embed(const MoebiusElement& g, const std::vector<int>& embedding_order,
                          long bits, long order_bound = 200);
// Classification only (no interval factor matrices); what the enumeration
// pipelines use.
std::vector<ElementClass> classify_tuple(const MoebiusElement& g,
                                         const std::vector<int>& embedding_order,
                                         long order_bound = 200);
TupleClass tuple_class_of(const std::vector<ElementClass>& classes);

// Translation length at one embedding: exact 0 for non-hyperbolic classes,
// else 2*arcosh(|phi_i(tr)|/2) certified to width <= 2^-bits.
struct TranslationLength {
  bool exact_zero = false;
  Interval value;
};
TranslationLength translation_length(const MoebiusElement& g, int root_index, long bits);

struct BoundaryPoint {
  bool infinite = false;
  Interval x;  // meaningful when finite
};

struct FixedPoints {
  ClassKind kind;
  // hyperbolic
  BoundaryPoint attractive, repulsive;
  // parabolic
  BoundaryPoint parabolic_point;
  // elliptic: interior fixed point re + i*im
  Interval re, im;
};

FixedPoints fixed_points(const MoebiusElement& g, int root_index, long bits);

// Projective fixed points (attractive, repulsive) as (u : v) interval pairs;
// avoids dividing by a small c.
struct ProjectivePoint {
  Interval u, v;
};
std::pair<ProjectivePoint, ProjectivePoint> fixed_points_projective(
    const MoebiusElement& g, int root_index, long bits);

// Exact: do g and h share a fixed point (as projective quadratic forms)?
bool share_fixed_point(const MoebiusElement& g, const MoebiusElement& h);

// Translation direction of a tuple: (l_1 : ... : l_r) normalized so the
// maximum coordinate is exactly 1; zero coordinates are exact.
struct Direction {
  std::vector<Interval> coords;
  std::vector<bool> exact_zero;
  std::vector<bool> exact_one;
  bool mixed = false;  // some factor is not hyperbolic (limit-cone sample)
  std::string word;
  size_t source_index = SIZE_MAX;  // enumeration index when cloud-produced
};
Direction translation_direction(const IsometryTuple& tuple, long bits);

// Geodesic in the upper half-plane: a vertical line {x = p} or a
// half-circle with center p and radius rho. Lines produced by the library
// carry their reflection matrix directly (rebuilding it from p and rho
// cancels catastrophically for near-vertical circles).
struct ReflectionLine {
  bool vertical = false;
  Interval p;
  Interval rho;
  std::optional<Mat2> matrix;
  // anti-Moebius matrix of the reflection (det < 0)
  Mat2 anti_matrix() const;
};

// h = reflect(L2) o reflect(L1) with both lines orthogonal to the axis of h,
// hyperbolic distance l(h)/2 apart; L1 passes through the anchor point.
std::pair<ReflectionLine, ReflectionLine> axis_reflections(const MoebiusElement& h,
                                                           int root_index,
                                                           const Interval& anchor_re,
                                                           const Interval& anchor_im,
                                                           long bits);

// Numeric composition reflect(L2) o reflect(L1) as a det-normalized Moebius
// interval matrix.
Mat2 compose_reflections(const ReflectionLine& l2, const ReflectionLine& l1);

enum class ProductType { Hyperbolic, Elliptic, Parabolic, Undecided };

struct ProductPrediction {
  ProductType type = ProductType::Undecided;
  bool degenerate = false;  // geometry unresolved at the precision budget
};

// Predicts the type of e*h (e elliptic, h hyperbolic at the embedding) from
// the axis/rotation reflection alignment, without forming the product.
ProductPrediction product_type_predict(const MoebiusElement& e, const MoebiusElement& h,
                                       int root_index, long bits);

// Decision core of the prediction: relation of two geodesics given the
// lifted angle intervals of their boundary endpoints. Crossing -> Elliptic,
// disjoint -> Hyperbolic, certified shared endpoint -> Parabolic.
ProductPrediction classify_reflection_line_pair(const std::array<Interval, 2>& l1,
                                                const std::array<Interval, 2>& l4);

// Ping-pong certificate for <g^n, h^n>.
struct SchottkyCertificate {
  long n = 0;
  // arcs around att(g), rep(g), att(h), rep(h) in the circle chart
  std::array<chart::Arc, 4> arcs;
  bool verified = false;
};

struct SchottkyResult {
  bool found = false;
  SchottkyCertificate cert;
  long max_power_tried = 0;
};

SchottkyResult schottky_powers(const MoebiusElement& g, const MoebiusElement& h,
                               int root_index, long max_power, long bits);

// Re-checks an existing certificate at a chosen precision; certificates are
// self-verifying, so any sufficient precision reproduces the inclusions.
bool verify_schottky(const MoebiusElement& g, const MoebiusElement& h, int root_index,
                     const SchottkyCertificate& cert, long bits);

}  // namespace limitcone
