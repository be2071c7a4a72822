#include "limitcone/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "limitcone/errors.hpp"

namespace limitcone {

Mat2 Mat2::mul(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d,
          c * o.a + d * o.c, c * o.b + d * o.d};
}

const char* class_kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::Identity: return "Identity";
    case ClassKind::EllipticFinite: return "EllipticFinite";
    case ClassKind::EllipticInfinite: return "EllipticInfinite";
    case ClassKind::Parabolic: return "Parabolic";
    case ClassKind::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

const char* tuple_class_name(TupleClass t) {
  switch (t) {
    case TupleClass::Identity: return "Identity";
    case TupleClass::Elliptic: return "Elliptic";
    case TupleClass::Parabolic: return "Parabolic";
    case TupleClass::Hyperbolic: return "Hyperbolic";
    case TupleClass::Mixed: return "Mixed";
  }
  return "?";
}

// ---- MoebiusElement ----------------------------------------------------

MoebiusElement::MoebiusElement(FieldElement a, FieldElement b, FieldElement c,
                               FieldElement d, int phi1_root)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
      phi1_root_(phi1_root) {
  FieldElement det = a_ * d_ - b_ * c_;
  if (!(det == FieldElement::rational(a_.field(), Rational(1))))
    fail(ErrorCode::BadSpec, "matrix determinant is not exactly 1");
  canonicalize();
}

MoebiusElement MoebiusElement::unchecked(FieldElement a, FieldElement b, FieldElement c,
                                         FieldElement d, int phi1_root) {
  MoebiusElement m;
  m.a_ = std::move(a);
  m.b_ = std::move(b);
  m.c_ = std::move(c);
  m.d_ = std::move(d);
  m.phi1_root_ = phi1_root;
  m.canonicalize();
  return m;
}

MoebiusElement MoebiusElement::identity(const FieldPtr& field, int phi1_root) {
  FieldElement one = FieldElement::rational(field, Rational(1));
  FieldElement zero = FieldElement::rational(field, Rational(0));
  return unchecked(one, zero, zero, one, phi1_root);
}

void MoebiusElement::canonicalize() {
  for (const FieldElement* e : {&a_, &b_, &c_, &d_}) {
    if (e->is_zero()) continue;
    if (e->sign_at(phi1_root_) < 0) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    return;
  }
  fail(ErrorCode::Internal, "zero matrix cannot be canonicalized");
}

bool MoebiusElement::is_identity() const {
  const Rational one(1);
  return b_.is_zero() && c_.is_zero() && a_.is_rational() &&
         a_.rational_part() == one && d_.is_rational() && d_.rational_part() == one;
}

MoebiusElement MoebiusElement::operator*(const MoebiusElement& o) const {
  return unchecked(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                   c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_, phi1_root_);
}

MoebiusElement MoebiusElement::inverse() const {
  return unchecked(d_, -b_, -c_, a_, phi1_root_);
}

MoebiusElement MoebiusElement::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  MoebiusElement acc = identity(field(), phi1_root_);
  MoebiusElement base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = (n >>= 1) ? base * base : base;
  }
  return acc;
}

bool MoebiusElement::operator==(const MoebiusElement& o) const {
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

std::uint64_t MoebiusElement::hash(std::uint64_t seed) const {
  std::uint64_t h = seed;
  h = a_.hash(h);
  h = b_.hash(h);
  h = c_.hash(h);
  h = d_.hash(h);
  return h;
}

Mat2 MoebiusElement::factor(int root_index, long bits) const {
  return {a_.embed(root_index, bits), b_.embed(root_index, bits),
          c_.embed(root_index, bits), d_.embed(root_index, bits)};
}

std::string MoebiusElement::str() const {
  std::ostringstream os;
  os << "[[" << a_.str() << ", " << b_.str() << "], [" << c_.str() << ", "
     << d_.str() << "]]";
  return os.str();
}

// ---- classification ----------------------------------------------------

namespace {

struct TraceSurvey {
  FieldElement t, disc;
  bool identity = false;
  bool parabolic = false;
  std::vector<int> disc_signs;  // 1-based by root index, [0] unused
};

TraceSurvey survey(const MoebiusElement& g) {
  TraceSurvey s;
  s.t = g.trace();
  s.disc = s.t * s.t + Rational(-4);
  if (g.is_identity()) {
    s.identity = true;
    return s;
  }
  if (s.disc.is_zero()) {
    s.parabolic = true;
    return s;
  }
  int n = g.field()->degree();
  s.disc_signs.assign(n + 1, 0);
  for (int j = 1; j <= n; ++j) s.disc_signs[j] = s.disc.sign_at(j);
  return s;
}

// Projective order of an elliptic matrix: smallest k with tau_k(t) = +-2,
// i.e. g^k = +-I. Caller guarantees ellipticity at every embedding.
long elliptic_order_scan(const FieldElement& t, long bound) {
  FieldPtr f = t.field();
  FieldElement two = FieldElement::rational(f, Rational(2));
  FieldElement minus_two = FieldElement::rational(f, Rational(-2));
  FieldElement prev = two, cur = t;
  for (long k = 2; k <= bound; ++k) {
    FieldElement next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
    if (cur == two || cur == minus_two) return k;
  }
  return 0;
}

ElementClass class_at(const TraceSurvey& s, int root_index, long order_bound,
                      long* cached_order) {
  ElementClass c;
  c.order_bound = order_bound;
  if (s.identity) {
    c.kind = ClassKind::Identity;
    return c;
  }
  if (s.parabolic) {
    c.kind = ClassKind::Parabolic;
    return c;
  }
  int sign = s.disc_signs.at(root_index);
  if (sign > 0) {
    c.kind = ClassKind::Hyperbolic;
    return c;
  }
  if (sign == 0)
    fail(ErrorCode::Internal, "discriminant vanishes at one embedding only");
  // elliptic here; a hyperbolic Galois conjugate rules out finite order
  // (finite order forces |phi_j(tr)| <= 2 for every j)
  for (size_t j = 1; j < s.disc_signs.size(); ++j) {
    if (s.disc_signs[j] > 0) {
      c.kind = ClassKind::EllipticInfinite;
      c.up_to_bound = false;
      return c;
    }
  }
  long order = cached_order && *cached_order >= 0
                   ? *cached_order
                   : elliptic_order_scan(s.t, order_bound);
  if (cached_order) *cached_order = order;
  if (order > 0) {
    c.kind = ClassKind::EllipticFinite;
    c.order = order;
  } else {
    c.kind = ClassKind::EllipticInfinite;
    c.up_to_bound = true;
  }
  return c;
}

}  // namespace

ElementClass classify(const MoebiusElement& g, int root_index, long order_bound) {
  if (root_index < 1 || root_index > g.field()->degree())
    fail(ErrorCode::BadIndex, "embedding index out of range");
  if (order_bound < 1) fail(ErrorCode::BadSpec, "order_bound must be >= 1");
  TraceSurvey s = survey(g);
  long cached = -1;
  return class_at(s, root_index, order_bound, &cached);
}

std::vector<ElementClass> classify_tuple(const MoebiusElement& g,
                                         const std::vector<int>& embedding_order,
                                         long order_bound) {
  TraceSurvey s = survey(g);
  long cached = -1;
  std::vector<ElementClass> out;
  out.reserve(embedding_order.size());
  for (int idx : embedding_order) {
    if (idx < 1 || idx > g.field()->degree())
      fail(ErrorCode::BadIndex, "embedding index out of range");
    out.push_back(class_at(s, idx, order_bound, &cached));
  }
  return out;
}

TupleClass tuple_class_of(const std::vector<ElementClass>& classes) {
  bool all_id = true, all_par = true, all_hyp = true, all_ell = true;
  for (const auto& c : classes) {
    all_id &= c.kind == ClassKind::Identity;
    all_par &= c.kind == ClassKind::Parabolic;
    all_hyp &= c.kind == ClassKind::Hyperbolic;
    all_ell &= c.is_elliptic();
  }
  if (all_id) return TupleClass::Identity;
  if (all_par) return TupleClass::Parabolic;
  if (all_hyp) return TupleClass::Hyperbolic;
  if (all_ell) return TupleClass::Elliptic;
  return TupleClass::Mixed;
}

IsometryTuple tuple_embed(const MoebiusElement& g, const std::vector<int>& embedding_order,
                          long bits, long order_bound) {
  if (embedding_order.empty()) fail(ErrorCode::BadSpec, "empty embedding order");
  for (size_t i = 0; i < embedding_order.size(); ++i)
    for (size_t j = i + 1; j < embedding_order.size(); ++j)
      if (embedding_order[i] == embedding_order[j])
        fail(ErrorCode::BadIndex, "embedding indices must be distinct");
  IsometryTuple t;
  t.source = g;
  t.embedding_order = embedding_order;
  t.classes = classify_tuple(g, embedding_order, order_bound);
  t.tuple_class = tuple_class_of(t.classes);
  t.factors.reserve(embedding_order.size());
  for (int idx : embedding_order) t.factors.push_back(g.factor(idx, bits));
  return t;
}

// ---- lengths and fixed points -------------------------------------------

TranslationLength translation_length(const MoebiusElement& g, int root_index, long bits) {
  TranslationLength out;
  ElementClass c = classify(g, root_index);
  if (c.kind != ClassKind::Hyperbolic) {
    out.exact_zero = true;
    out.value = Interval(Rational(0), std::max<mpfr_prec_t>(64, bits + 16));
    return out;
  }
  FieldElement t = g.trace();
  long in_bits = bits + 8;
  while (true) {
    Interval half_tr = t.embed(root_index, in_bits).abs() / Interval::exact_int(2, in_bits + 16);
    Interval ell = half_tr.acosh() * Interval::exact_int(2, in_bits + 16);
    if (ell.width_below(bits)) {
      out.value = ell;
      return out;
    }
    in_bits *= 2;
  }
}

namespace {

int exact_sign_nonzero(const FieldElement& e, int root_index) {
  int s = e.sign_at(root_index);
  if (s == 0) fail(ErrorCode::Internal, "unexpected zero sign");
  return s;
}

}  // namespace

std::pair<ProjectivePoint, ProjectivePoint> fixed_points_projective(
    const MoebiusElement& g, int root_index, long bits) {
  ElementClass cls = classify(g, root_index);
  if (cls.kind != ClassKind::Hyperbolic)
    fail(ErrorCode::NotHyperbolic, "projective fixed points need a hyperbolic element");
  const FieldElement& c = g.c();
  mpfr_prec_t prec = std::max<mpfr_prec_t>(64, bits + 16);
  if (c.is_zero()) {
    // fixes infinity and b/(d-a)
    FieldElement x0 = g.b() / (g.d() - g.a());
    ProjectivePoint inf{Interval::exact_int(1, prec), Interval::exact_int(0, prec)};
    ProjectivePoint fin{x0.embed(root_index, bits), Interval::exact_int(1, prec)};
    int s = exact_sign_nonzero(g.a() * g.a() + Rational(-1), root_index);
    if (s > 0) return {inf, fin};  // |a| > 1: infinity attracts
    return {fin, inf};
  }
  FieldElement tr = g.trace();
  FieldElement disc = tr * tr + Rational(-4);
  int sign_t = exact_sign_nonzero(tr, root_index);
  long in_bits = bits + 8;
  while (true) {
    Interval ti = tr.embed(root_index, in_bits);
    Interval ci = c.embed(root_index, in_bits);
    Interval di = g.d().embed(root_index, in_bits);
    Interval bi = g.b().embed(root_index, in_bits);
    Interval root = disc.embed(root_index, in_bits).sqrt();
    Interval two = Interval::exact_int(2, ti.prec());
    Interval srt = sign_t > 0 ? root : -root;
    Interval mu_big = (ti + srt) / two;
    Interval mu_small = (ti - srt) / two;
    ProjectivePoint att{mu_big - di, ci};
    ProjectivePoint rep{mu_small - di, ci};
    // rationalized alternates guard against mu ~ d cancellation
    if (att.u.contains_zero() && att.v.contains_zero())
      att = ProjectivePoint{-bi, mu_small - di};
    if (rep.u.contains_zero() && rep.v.contains_zero())
      rep = ProjectivePoint{-bi, mu_big - di};
    if (!att.u.contains_zero() || !att.v.contains_zero())
      if (!rep.u.contains_zero() || !rep.v.contains_zero()) return {att, rep};
    in_bits *= 2;
  }
}

FixedPoints fixed_points(const MoebiusElement& g, int root_index, long bits) {
  if (g.is_identity()) fail(ErrorCode::BadSpec, "identity has no fixed-point data");
  FixedPoints out;
  ElementClass cls = classify(g, root_index);
  out.kind = cls.kind;
  mpfr_prec_t prec = std::max<mpfr_prec_t>(64, bits + 16);
  const FieldElement& c = g.c();
  if (cls.kind == ClassKind::Parabolic) {
    if (c.is_zero()) {
      out.parabolic_point.infinite = true;
    } else {
      FieldElement x = (g.a() - g.d()) / (c * Rational(2));
      out.parabolic_point.x = x.embed(root_index, bits);
    }
    return out;
  }
  if (cls.kind == ClassKind::Hyperbolic) {
    if (c.is_zero()) {
      // fixes infinity and b/(d-a); infinity attracts iff |a| > 1
      FieldElement x0 = g.b() / (g.d() - g.a());
      BoundaryPoint inf, fin;
      inf.infinite = true;
      fin.x = x0.embed(root_index, bits);
      int s = exact_sign_nonzero(g.a() * g.a() + Rational(-1), root_index);
      out.attractive = s > 0 ? inf : fin;
      out.repulsive = s > 0 ? fin : inf;
      return out;
    }
    long in_bits = bits + 8;
    while (true) {
      auto [att, rep] = fixed_points_projective(g, root_index, in_bits);
      if (!att.v.contains_zero() && !rep.v.contains_zero()) {
        BoundaryPoint ab, rb;
        ab.x = att.u / att.v;
        rb.x = rep.u / rep.v;
        if (ab.x.width_below(bits) && rb.x.width_below(bits)) {
          out.attractive = ab;
          out.repulsive = rb;
          return out;
        }
      }
      in_bits *= 2;
    }
  }
  // elliptic: interior fixed point; c != 0 here (c == 0 forces real eigenvalues)
  if (c.is_zero()) fail(ErrorCode::Internal, "elliptic with c == 0");
  FieldElement tr = g.trace();
  FieldElement neg_disc = FieldElement::rational(tr.field(), Rational(4)) - tr * tr;
  FieldElement xe = (g.a() - g.d()) / (c * Rational(2));
  long in_bits = bits + 8;
  while (true) {
    Interval re = xe.embed(root_index, in_bits);
    Interval ci = c.embed(root_index, in_bits).abs();
    Interval im = neg_disc.embed(root_index, in_bits).sqrt() /
                  (ci * Interval::exact_int(2, prec));
    if (re.width_below(bits) && im.width_below(bits)) {
      out.re = re;
      out.im = im;
      return out;
    }
    in_bits *= 2;
  }
}

namespace {

// determinant of a 4x4 matrix of exact field elements (cofactor expansion)
FieldElement det4(const std::array<std::array<FieldElement, 4>, 4>& m) {
  auto det3 = [](const FieldElement& a, const FieldElement& b, const FieldElement& c,
                 const FieldElement& d, const FieldElement& e, const FieldElement& f,
                 const FieldElement& g, const FieldElement& h, const FieldElement& i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  };
  FieldElement r = m[0][0] * det3(m[1][1], m[1][2], m[1][3], m[2][1], m[2][2], m[2][3],
                                  m[3][1], m[3][2], m[3][3]);
  r = r - m[0][1] * det3(m[1][0], m[1][2], m[1][3], m[2][0], m[2][2], m[2][3], m[3][0],
                         m[3][2], m[3][3]);
  r = r + m[0][2] * det3(m[1][0], m[1][1], m[1][3], m[2][0], m[2][1], m[2][3], m[3][0],
                         m[3][1], m[3][3]);
  r = r - m[0][3] * det3(m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2], m[3][0],
                         m[3][1], m[3][2]);
  return r;
}

}  // namespace

bool share_fixed_point(const MoebiusElement& g, const MoebiusElement& h) {
  // fixed points of m are the projective roots of c x^2 + (d-a) x y - b y^2
  auto form = [](const MoebiusElement& m) {
    return std::array<FieldElement, 3>{m.c(), m.d() - m.a(), -m.b()};
  };
  auto fg = form(g), fh = form(h);
  FieldPtr f = g.field();
  FieldElement z = FieldElement::rational(f, Rational(0));
  std::array<std::array<FieldElement, 4>, 4> m{{{fg[0], fg[1], fg[2], z},
                                                {z, fg[0], fg[1], fg[2]},
                                                {fh[0], fh[1], fh[2], z},
                                                {z, fh[0], fh[1], fh[2]}}};
  return det4(m).is_zero();
}

// ---- translation direction ----------------------------------------------

Direction translation_direction(const IsometryTuple& tuple, long bits) {
  const size_t r = tuple.embedding_order.size();
  Direction dir;
  dir.coords.resize(r);
  dir.exact_zero.assign(r, false);
  dir.exact_one.assign(r, false);
  std::vector<size_t> hyp;
  for (size_t k = 0; k < r; ++k) {
    if (tuple.classes[k].kind == ClassKind::Hyperbolic) hyp.push_back(k);
    else dir.mixed = true;
  }
  if (hyp.empty())
    fail(ErrorCode::NoTranslationDirection, "no hyperbolic factor in tuple");
  FieldElement t = tuple.source.trace();
  FieldElement t2 = t * t;
  // argmax of |phi(tr)| among hyperbolic factors (exact comparisons)
  size_t best = hyp[0];
  for (size_t k : hyp) {
    if (k == best) continue;
    Ordering o = compare_embeddings(t2, tuple.embedding_order[k],
                                    tuple.embedding_order[best]);
    if (o == Ordering::Greater) best = k;
  }
  mpfr_prec_t prec = std::max<mpfr_prec_t>(64, bits + 16);
  for (size_t k = 0; k < r; ++k) {
    if (tuple.classes[k].kind != ClassKind::Hyperbolic) {
      dir.coords[k] = Interval(Rational(0), prec);
      dir.exact_zero[k] = true;
      continue;
    }
    Ordering o = k == best ? Ordering::Equal
                           : compare_embeddings(t2, tuple.embedding_order[k],
                                                tuple.embedding_order[best]);
    if (o == Ordering::Equal) {
      dir.coords[k] = Interval(Rational(1), prec);
      dir.exact_one[k] = true;
      continue;
    }
    long in_bits = bits + 8;
    while (true) {
      Interval lk = translation_length(tuple.source, tuple.embedding_order[k], in_bits).value;
      Interval lb = translation_length(tuple.source, tuple.embedding_order[best], in_bits).value;
      Interval ratio = lk / lb;
      if (ratio.width_below(bits)) {
        dir.coords[k] = ratio;
        break;
      }
      in_bits *= 2;
    }
  }
  return dir;
}

// ---- reflections ---------------------------------------------------------

Mat2 ReflectionLine::anti_matrix() const {
  if (matrix) return *matrix;
  mpfr_prec_t prec = p.prec();
  Interval one = Interval::exact_int(1, prec);
  Interval zero = Interval::exact_int(0, prec);
  if (vertical) {
    Interval two_p = p * Interval::exact_int(2, prec);
    return {-one, two_p, zero, one};
  }
  return {p, rho * rho - p * p, one, -p};
}

Mat2 compose_reflections(const ReflectionLine& l2, const ReflectionLine& l1) {
  Mat2 m = l2.anti_matrix().mul(l1.anti_matrix());
  Interval s = m.det().sqrt();
  return {m.a / s, m.b / s, m.c / s, m.d / s};
}

namespace {

struct StandardPosition {
  Mat2 M;      // sends (repulsive, attractive) to (0, infinity)
  Mat2 M_adj;  // projective inverse
};

StandardPosition standard_position(const MoebiusElement& h, int root_index, long bits) {
  mpfr_prec_t prec = std::max<mpfr_prec_t>(64, bits + 16);
  Interval one = Interval::exact_int(1, prec);
  Interval zero = Interval::exact_int(0, prec);
  const FieldElement& c = h.c();
  StandardPosition sp;
  if (c.is_zero()) {
    FieldElement x0 = h.b() / (h.d() - h.a());
    Interval u = x0.embed(root_index, bits);
    int s = (h.a() * h.a() + Rational(-1)).sign_at(root_index);
    if (s > 0) {
      // infinity attractive, x0 repulsive: M = [[1, -u], [0, 1]]
      sp.M = {one, -u, zero, one};
      sp.M_adj = {one, u, zero, one};
    } else {
      // x0 attractive, infinity repulsive: M = [[0, 1], [1, -v]]
      sp.M = {zero, one, one, -u};
      sp.M_adj = {-u, -one, -one, zero};
    }
    return sp;
  }
  long in_bits = bits;
  for (int attempt = 0; attempt < 6; ++attempt, in_bits *= 2) {
    auto [att, rep] = fixed_points_projective(h, root_index, in_bits);
    if (att.v.contains_zero() || rep.v.contains_zero()) continue;
    Interval u = rep.u / rep.v;
    Interval v = att.u / att.v;
    // orientation: the map must carry the upper half-plane to itself
    if (u.certainly_gt(v)) {
      sp.M = {one, -u, one, -v};
      sp.M_adj = {-v, u, -one, one};
      return sp;
    }
    if (v.certainly_gt(u)) {
      sp.M = {-one, u, one, -v};
      sp.M_adj = {-v, -u, -one, -one};
      return sp;
    }
  }
  fail(ErrorCode::ConstructionInvalid, "axis endpoints unresolved at this precision");
}

// image of the interior point z = x + iy under an interval Moebius matrix
void apply_complex(const Mat2& m, const Interval& x, const Interval& y, Interval& rx,
                   Interval& ry) {
  Interval nr = m.a * x + m.b, ni = m.a * y;
  Interval dr = m.c * x + m.d, di = m.c * y;
  Interval den = dr * dr + di * di;
  rx = (nr * dr + ni * di) / den;
  ry = (ni * dr - nr * di) / den;
}

ReflectionLine line_from_anti(const Mat2& n) {
  // fixed set of z -> n(conj z): c x^2 + (d - a) x - b = 0 on the real line
  ReflectionLine l;
  l.matrix = n;
  if (!n.c.contains_zero()) {
    l.vertical = false;
    l.p = (n.a - n.d) / (n.c * Interval::exact_int(2, n.c.prec()));
    l.rho = (n.b / n.c + l.p * l.p).sqrt();
    return l;
  }
  Interval da = n.d - n.a;
  if (da.contains_zero())
    fail(ErrorCode::ConstructionInvalid,
         "reflection line unresolved at this precision");
  l.vertical = true;
  l.p = n.b / da;
  return l;
}

// multiplicative half-translation factor e^{l/2} = |t|/2 + sqrt(t^2/4 - 1)
Interval half_translation_factor(const MoebiusElement& h, int root_index, long bits) {
  FieldElement t = h.trace();
  Interval ti = t.embed(root_index, bits).abs();
  Interval two = Interval::exact_int(2, ti.prec());
  Interval one = Interval::exact_int(1, ti.prec());
  Interval half_t = ti / two;
  return half_t + (half_t * half_t - one).sqrt();
}

}  // namespace

std::pair<ReflectionLine, ReflectionLine> axis_reflections(const MoebiusElement& h,
                                                           int root_index,
                                                           const Interval& anchor_re,
                                                           const Interval& anchor_im,
                                                           long bits) {
  if (classify(h, root_index).kind != ClassKind::Hyperbolic)
    fail(ErrorCode::NotHyperbolic, "axis_reflections needs a hyperbolic element");
  long in_bits = bits + 16;
  for (int attempt = 0; attempt < 6; ++attempt, in_bits *= 2) {
    try {
      StandardPosition sp = standard_position(h, root_index, in_bits);
      Interval wx, wy;
      apply_complex(sp.M, anchor_re, anchor_im, wx, wy);
      if (!wy.certainly_gt(0.0)) continue;  // anchor must sit in the half-plane
      Interval rho1 = wy;
      Interval rho2 = rho1 * half_translation_factor(h, root_index, in_bits);
      auto reflect = [&](const Interval& rho) {
        mpfr_prec_t prec = rho.prec();
        Mat2 sigma_std{Interval::exact_int(0, prec), rho * rho,
                       Interval::exact_int(1, prec), Interval::exact_int(0, prec)};
        Mat2 m = sp.M_adj.mul(sigma_std).mul(sp.M);
        return line_from_anti(m);
      };
      return {reflect(rho1), reflect(rho2)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConstructionInvalid &&
          e.code() != ErrorCode::DivisionByZero)
        throw;
    }
  }
  fail(ErrorCode::ConstructionInvalid,
       "axis reflections unresolved at the precision budget");
}

// ---- product type prediction ---------------------------------------------

namespace {

// Are two lifted angle intervals certainly distinct mod 1?
bool angles_disjoint_mod1(const Interval& p, const Interval& q) {
  Interval d = p - q;
  long lo = std::lround(std::floor(d.lo().to_double())) - 1;
  long hi = std::lround(std::ceil(d.hi().to_double())) + 1;
  for (long m = lo; m <= hi; ++m) {
    Interval mi = Interval::exact_int(m, d.prec());
    if (!d.certainly_lt(mi) && !mi.certainly_lt(d)) return false;
  }
  return true;
}

bool angles_equal_points_mod1(const Interval& p, const Interval& q) {
  if (!p.is_point() || !q.is_point()) return false;
  Interval d = p - q;
  return d.is_point() && mpfr_integer_p(d.lo().get());
}

// angle of one root of c x^2 + (d-a) x - b = 0 (sign picks the root). The
// direct representation ((a-d)+s : 2c) cancels when the line is nearly
// vertical; the rationalized one (-2b : (a-d)-s) covers that case.
std::optional<Interval> quadratic_root_angle(const Mat2& n, const Interval& s,
                                             int sign) {
  Interval srt = sign > 0 ? s : -s;
  Interval u_a = (n.a - n.d) + srt;
  Interval v_a = n.c * Interval::exact_int(2, s.prec());
  if (!u_a.contains_zero() || !v_a.contains_zero())
    return chart::angle_of_point(u_a, v_a);
  Interval u_b = -(n.b * Interval::exact_int(2, s.prec()));
  Interval v_b = (n.a - n.d) - srt;
  if (!u_b.contains_zero() || !v_b.contains_zero())
    return chart::angle_of_point(u_b, v_b);
  return std::nullopt;
}

// endpoints (two lifted angle intervals) of the fixed geodesic of an
// anti-matrix; nullopt when unresolved at this precision.
std::optional<std::array<Interval, 2>> anti_fixed_angles(const Mat2& n) {
  Interval da = n.d - n.a;
  Interval disc = da * da + n.b * n.c * Interval::exact_int(4, da.prec());
  if (!disc.certainly_gt(0.0)) return std::nullopt;
  Interval s = disc.sqrt();
  auto a1 = quadratic_root_angle(n, s, +1);
  auto a2 = quadratic_root_angle(n, s, -1);
  if (!a1 || !a2) return std::nullopt;
  return std::array<Interval, 2>{*a1, *a2};
}

}  // namespace

ProductPrediction classify_reflection_line_pair(const std::array<Interval, 2>& l1,
                                                const std::array<Interval, 2>& l4) {
  // shared endpoint, certifiable only for exact (point) angles
  int exact_shared = 0;
  for (const auto& p : l1)
    for (const auto& q : l4)
      if (angles_equal_points_mod1(p, q)) ++exact_shared;
  if (exact_shared == 1) return {ProductType::Parabolic, false};
  for (const auto& p : l1)
    for (const auto& q : l4)
      if (!angles_disjoint_mod1(p, q)) return {ProductType::Undecided, true};
  // all four endpoints distinct: crossing iff the pairs interleave
  double p1 = chart::fold(l1[0].mid_double());
  double p2 = chart::fold(l1[1].mid_double());
  double q1 = chart::fold(l4[0].mid_double());
  double q2 = chart::fold(l4[1].mid_double());
  auto in_arc = [&](double x) {
    double span = chart::fold(p2 - p1);
    return chart::fold(x - p1) < span;
  };
  int inside = (in_arc(q1) ? 1 : 0) + (in_arc(q2) ? 1 : 0);
  if (inside == 1) return {ProductType::Elliptic, false};
  return {ProductType::Hyperbolic, false};
}

ProductPrediction product_type_predict(const MoebiusElement& e, const MoebiusElement& h,
                                       int root_index, long bits) {
  if (!classify(e, root_index).is_elliptic())
    fail(ErrorCode::BadSpec, "product_type_predict: first argument must be elliptic");
  if (classify(h, root_index).kind != ClassKind::Hyperbolic)
    fail(ErrorCode::NotHyperbolic, "product_type_predict: second argument must be hyperbolic");
  FixedPoints ef = fixed_points(e, root_index, bits);
  long in_bits = bits + 16;
  for (int attempt = 0; attempt < 5; ++attempt, in_bits *= 2) {
    try {
      StandardPosition sp = standard_position(h, root_index, in_bits);
      Interval wx, wy;
      apply_complex(sp.M, ef.re, ef.im, wx, wy);
      Interval r3sq = wx * wx + wy * wy;
      mpfr_prec_t prec = r3sq.prec();
      Mat2 sigma3 = sp.M_adj
                        .mul(Mat2{Interval::exact_int(0, prec), r3sq,
                                  Interval::exact_int(1, prec), Interval::exact_int(0, prec)})
                        .mul(sp.M);
      Mat2 H = h.factor(root_index, in_bits);
      Mat2 E = e.factor(root_index, in_bits);
      Mat2 a1 = sigma3.mul(H);   // sigma_1 = sigma_3 o h
      Mat2 a4 = E.mul(sigma3);   // sigma_4 = e o sigma_3
      auto l1 = anti_fixed_angles(a1);
      auto l4 = anti_fixed_angles(a4);
      if (!l1 || !l4) continue;
      ProductPrediction p = classify_reflection_line_pair(*l1, *l4);
      if (p.type != ProductType::Undecided) return p;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DivisionByZero &&
          err.code() != ErrorCode::ConstructionInvalid)
        throw;
    }
  }
  return {ProductType::Undecided, true};
}

// ---- Schottky powers -------------------------------------------------------

namespace {

Interval angle_of_projective(const ProjectivePoint& p) {
  return chart::angle_of_point(p.u, p.v);
}

// evaluate g at the boundary point of dyadic angle t; returns the lifted
// angle interval of the image
Interval image_angle(const MoebiusElement& g, const Rational& angle, int root_index,
                     long bits) {
  mpfr_prec_t prec = std::max<mpfr_prec_t>(64, bits + 16);
  Mat2 m = g.factor(root_index, bits);
  // reduce angle to t0 in (-1/2, 1/2]; t0 == 1/2 is the point at infinity
  Rational t0 = angle;
  while (t0 > Rational(1, 2)) t0 -= 1;
  while (t0 <= Rational(-1, 2)) t0 += 1;
  Interval u(0.0, prec), v(0.0, prec);
  if (t0 == Rational(1, 2)) {
    u = Interval::exact_int(1, prec);
    v = Interval::exact_int(0, prec);
  } else {
    u = chart::point_at_angle(t0, prec);
    v = Interval::exact_int(1, prec);
  }
  return chart::angle_of_point(m.a * u + m.b * v, m.c * u + m.d * v);
}

Rational dyadic_round(double x, int bits) {
  double scaled = std::floor(x * std::ldexp(1.0, bits) + 0.5);
  Rational r(Integer(static_cast<long>(scaled)), Integer(1) << bits);
  r.canonicalize();
  return r;
}

}  // namespace

namespace {

// the 8 ping-pong inclusions: powers map the complement-arc endpoints of the
// repelling interval into the attracting one, both ways, for g and h
bool schottky_inclusions(const MoebiusElement& gn, const MoebiusElement& hn,
                         int root_index, const std::array<chart::Arc, 4>& arcs,
                         long eval_bits) {
  auto check_map = [&](const MoebiusElement& m, const chart::Arc& source,
                       const chart::Arc& target) {
    try {
      std::array<Rational, 2> endpoints = {Rational(source.center - source.radius),
                                           Rational(source.center + source.radius)};
      for (const Rational& endpoint : endpoints) {
        Interval img = image_angle(m, endpoint, root_index, eval_bits);
        if (!chart::arc_contains(target, img)) return false;
      }
    } catch (const Error&) {
      return false;  // unresolved at this precision
    }
    return true;
  };
  return check_map(gn, arcs[1], arcs[0]) && check_map(gn.inverse(), arcs[0], arcs[1]) &&
         check_map(hn, arcs[3], arcs[2]) && check_map(hn.inverse(), arcs[2], arcs[3]);
}

}  // namespace

bool verify_schottky(const MoebiusElement& g, const MoebiusElement& h, int root_index,
                     const SchottkyCertificate& cert, long bits) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (chart::arcs_overlap(cert.arcs[i], cert.arcs[j])) return false;
  auto [ga, gr] = fixed_points_projective(g, root_index, std::max(bits, 64L));
  auto [ha, hr] = fixed_points_projective(h, root_index, std::max(bits, 64L));
  const Interval angs[4] = {angle_of_projective(ga), angle_of_projective(gr),
                            angle_of_projective(ha), angle_of_projective(hr)};
  for (int k = 0; k < 4; ++k)
    if (!chart::arc_contains(cert.arcs[k], angs[k])) return false;
  return schottky_inclusions(g.pow(cert.n), h.pow(cert.n), root_index, cert.arcs, bits);
}

SchottkyResult schottky_powers(const MoebiusElement& g, const MoebiusElement& h,
                               int root_index, long max_power, long bits) {
  if (classify(g, root_index).kind != ClassKind::Hyperbolic ||
      classify(h, root_index).kind != ClassKind::Hyperbolic)
    fail(ErrorCode::NotHyperbolic, "schottky_powers needs two hyperbolic elements");
  if (share_fixed_point(g, h))
    fail(ErrorCode::CommonFixedPoint, "generators share a fixed point");

  SchottkyResult result;
  result.max_power_tried = max_power;

  // fixed-point angles: att(g), rep(g), att(h), rep(h)
  long fp_bits = std::max(bits, 64L);
  std::array<Interval, 4> fp_angles = {Interval(), Interval(), Interval(), Interval()};
  std::array<double, 4> folded{};
  auto [ga, gr] = fixed_points_projective(g, root_index, fp_bits);
  auto [ha, hr] = fixed_points_projective(h, root_index, fp_bits);
  fp_angles = {angle_of_projective(ga), angle_of_projective(gr),
               angle_of_projective(ha), angle_of_projective(hr)};
  for (int k = 0; k < 4; ++k) folded[k] = chart::fold(fp_angles[k].mid_double());

  double min_dist = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      min_dist = std::min(min_dist, chart::circle_distance(folded[i], folded[j]));
  if (min_dist <= 0.0) return result;

  // dyadic arcs around the fixed points, radius = floor_dyadic(min_dist / 3)
  Rational delta(1);
  int dexp = 0;
  while (delta > Rational(min_dist / 3.0)) {
    delta /= 2;
    if (++dexp > 40) return result;  // fixed points too close to separate
  }
  std::array<chart::Arc, 4> arcs;
  for (int k = 0; k < 4; ++k) arcs[k] = {dyadic_round(folded[k], dexp + 3), delta};

  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (chart::arcs_overlap(arcs[i], arcs[j])) return result;
  // fixed points must sit well inside their arcs (the containment proof of
  // the certificate needs rep(g) interior to I_g- and att(g) interior to I_g+)
  for (int k = 0; k < 4; ++k)
    if (!chart::arc_contains({arcs[k].center, arcs[k].radius / 2}, fp_angles[k]))
      return result;

  // ping-pong inclusions; arcs: 0 = I_g+, 1 = I_g-, 2 = I_h+, 3 = I_h-
  for (long n = 1; n <= max_power; ++n) {
    MoebiusElement gn = g.pow(n), hn = h.pow(n);
    bool ok = false;
    for (long eval_bits : {bits, bits * 4}) {
      ok = schottky_inclusions(gn, hn, root_index, arcs, eval_bits);
      if (ok) break;
    }
    if (ok) {
      result.found = true;
      result.cert.n = n;
      result.cert.arcs = arcs;
      result.cert.verified = true;
      return result;
    }
  }
  return result;
}

}  // namespace limitcone
