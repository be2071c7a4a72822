#include <doctest.h>

#include <cmath>
#include <random>

#include "limitcone/errors.hpp"
#include "limitcone/groups.hpp"
#include "limitcone/moebius.hpp"

using namespace limitcone;

namespace {

const GroupSpec& hecke5() {
  static GroupSpec spec = hecke_group(5);
  return spec;
}

MoebiusElement word(const char* w) { return evaluate_word(hecke5(), w); }

FieldPtr rational_field() {
  static FieldPtr f = NumberField::create(poly::parse("x-1"));
  return f;
}

MoebiusElement rational_matrix(long a_num, long a_den, long b_num, long b_den,
                               long c_num, long c_den, long d_num, long d_den) {
  FieldPtr f = rational_field();
  return MoebiusElement(FieldElement::rational(f, Rational(a_num, a_den)),
                        FieldElement::rational(f, Rational(b_num, b_den)),
                        FieldElement::rational(f, Rational(c_num, c_den)),
                        FieldElement::rational(f, Rational(d_num, d_den)), 1);
}

}  // namespace

TEST_CASE("canonicalization and projective equality") {
  const GroupSpec& spec = hecke5();
  FieldPtr f = spec.field;
  FieldElement zero = FieldElement::rational(f, Rational(0));
  FieldElement one = FieldElement::rational(f, Rational(1));
  MoebiusElement s_pos(zero, -one, one, zero, 2);
  MoebiusElement s_neg(zero, one, -one, zero, 2);  // -S as input
  CHECK(s_pos == s_neg);
  // canonicalization is idempotent through products
  MoebiusElement id = s_pos * s_pos;
  CHECK(id.is_identity());
  CHECK(id == MoebiusElement::identity(f, 2));

  // determinant must be exactly 1
  CHECK_THROWS_AS(MoebiusElement(one, one, one, one, 2), Error);
}

TEST_CASE("trace trichotomy on Hecke(5) words") {
  const GroupSpec& spec = hecke5();
  CHECK(classify(word("T"), spec.identity_root()).kind == ClassKind::Parabolic);

  ElementClass ts = classify(word("T*S"), spec.identity_root());
  CHECK(ts.kind == ClassKind::EllipticFinite);
  CHECK(ts.order == 5);

  ElementClass t2s_1 = classify(word("T^2*S"), spec.identity_root());
  CHECK(t2s_1.kind == ClassKind::Hyperbolic);
  ElementClass t2s_2 = classify(word("T^2*S"), spec.embedding_order[1]);
  CHECK(t2s_2.kind == ClassKind::EllipticInfinite);
  CHECK(!t2s_2.up_to_bound);  // a hyperbolic conjugate makes this certain

  CHECK(classify(MoebiusElement::identity(spec.field, 2), 1).kind == ClassKind::Identity);
}

TEST_CASE("classification agrees with the 200-step matrix power oracle") {
  const GroupSpec& spec = hecke5();
  EnumerationResult e = enumerate_group(spec, 6, 100000);
  long checked = 0;
  for (const auto& g : e.elements) {
    ElementClass c = classify(g, spec.identity_root(), 200);
    long oracle_order = 0;
    MoebiusElement p = g;
    for (long k = 1; k <= 200; ++k) {
      if (p.is_identity()) {
        oracle_order = k;
        break;
      }
      p = p * g;
    }
    if (c.kind == ClassKind::Identity) {
      CHECK(g.is_identity());
    } else if (c.kind == ClassKind::EllipticFinite) {
      CHECK(oracle_order == c.order);
    } else {
      CHECK(oracle_order == 0);
    }
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("trace of the square equals tr^2 - 2 on every enumerated element") {
  const GroupSpec& spec = hecke5();
  EnumerationResult e = enumerate_group(spec, 5, 100000);
  for (const auto& g : e.elements) {
    FieldElement t = g.trace();
    FieldElement expect = chebyshev_trace(2, t);
    FieldElement got = (g * g).trace();
    // traces are canonical-representative signed: equality holds up to sign
    CHECK((got == expect || got == -expect));
  }
}

TEST_CASE("tuple_embed rejects duplicate embedding indices") {
  MoebiusElement g = word("T^2*S");
  CHECK_THROWS_AS(static_cast<void>(tuple_embed(g, {2, 2}, 64)), Error);
}

TEST_CASE("translation lengths") {
  const GroupSpec& spec = hecke5();
  TranslationLength zero = translation_length(word("T"), spec.identity_root(), 64);
  CHECK(zero.exact_zero);

  TranslationLength l1 = translation_length(word("T^2*S"), spec.identity_root(), 64);
  CHECK(!l1.exact_zero);
  CHECK(l1.value.mid_double() == doctest::Approx(2.1225501238).epsilon(1e-8));
  CHECK(l1.value.width_below(64));

  TranslationLength l2 = translation_length(word("T^4*S"), spec.identity_root(), 64);
  CHECK(l2.value.mid_double() == doctest::Approx(3.6854600694).epsilon(1e-8));

  // independent oracle: l = 2 ln((|t| + sqrt(t^2-4))/2) in doubles
  double t = word("T^4*S").trace().embed(spec.identity_root(), 64).mid_double();
  double oracle = 2.0 * std::log((std::fabs(t) + std::sqrt(t * t - 4)) / 2.0);
  CHECK(l2.value.mid_double() == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("fixed points") {
  // diagonal-style hyperbolic over Q: attractive infinity, repulsive 0
  MoebiusElement diag = rational_matrix(2, 1, 0, 1, 0, 1, 1, 2);
  FixedPoints fp = fixed_points(diag, 1, 64);
  CHECK(fp.kind == ClassKind::Hyperbolic);
  CHECK(fp.attractive.infinite);
  CHECK(!fp.repulsive.infinite);
  CHECK(fp.repulsive.x.mid_double() == doctest::Approx(0.0));

  const GroupSpec& spec = hecke5();
  FixedPoints t4s = fixed_points(word("T^4*S"), spec.identity_root(), 64);
  CHECK(t4s.attractive.x.mid_double() == doctest::Approx(6.3137515147).epsilon(1e-8));
  CHECK(t4s.repulsive.x.mid_double() == doctest::Approx(0.1583844403).epsilon(1e-6));

  FixedPoints par = fixed_points(word("T"), spec.identity_root(), 64);
  CHECK(par.kind == ClassKind::Parabolic);
  CHECK(par.parabolic_point.infinite);

  FixedPoints ell = fixed_points(word("T*S"), spec.identity_root(), 64);
  CHECK(ell.kind == ClassKind::EllipticFinite);
  CHECK(ell.im.certainly_gt(0.0));
}

TEST_CASE("shared fixed point detection is exact") {
  const GroupSpec& spec = hecke5();
  (void)spec;
  MoebiusElement g = word("T^4*S");
  MoebiusElement h = word("S*T^4*S*S");  // S g S^-1 (S^-1 = S projectively)
  CHECK(share_fixed_point(g, g.pow(2)));
  CHECK(!share_fixed_point(g, h));
  // translations both fix infinity
  CHECK(share_fixed_point(word("T"), word("T^3")));
}

TEST_CASE("tuple embedding and classes") {
  const GroupSpec& spec = hecke5();
  IsometryTuple id = tuple_embed(MoebiusElement::identity(spec.field, 2),
                                 spec.embedding_order, 64);
  CHECK(id.tuple_class == TupleClass::Identity);

  IsometryTuple t = tuple_embed(word("T"), spec.embedding_order, 64);
  CHECK(t.tuple_class == TupleClass::Parabolic);
  CHECK(t.classes[0].kind == ClassKind::Parabolic);
  CHECK(t.classes[1].kind == ClassKind::Parabolic);

  IsometryTuple m = tuple_embed(word("T^2*S"), spec.embedding_order, 64);
  CHECK(m.tuple_class == TupleClass::Mixed);
  CHECK(m.classes[0].kind == ClassKind::Hyperbolic);
  CHECK(m.classes[1].kind == ClassKind::EllipticInfinite);

  IsometryTuple h = tuple_embed(word("T^4*S"), spec.embedding_order, 64);
  CHECK(h.tuple_class == TupleClass::Hyperbolic);
  // factor matrices contain the embedded entries
  CHECK(h.factors[0].a.mid_double() ==
        doctest::Approx(word("T^4*S").a().embed(2, 64).mid_double()));
}

TEST_CASE("translation directions") {
  const GroupSpec& spec = hecke5();
  IsometryTuple t4s = tuple_embed(word("T^4*S"), spec.embedding_order, 64);
  Direction d = translation_direction(t4s, 64);
  CHECK(d.exact_one[0]);
  CHECK(d.coords[1].mid_double() == doctest::Approx(0.3659111562).epsilon(1e-8));
  CHECK(!d.mixed);

  IsometryTuple t2s = tuple_embed(word("T^2*S"), spec.embedding_order, 64);
  Direction d2 = translation_direction(t2s, 64);
  CHECK(d2.exact_one[0]);
  CHECK(d2.exact_zero[1]);
  CHECK(d2.mixed);

  // torsion element: no translation direction
  IsometryTuple ts = tuple_embed(word("T*S"), spec.embedding_order, 64);
  CHECK_THROWS_AS(static_cast<void>(translation_direction(ts, 64)), Error);

  // equal factors: diagonal spec gives exactly (1:1)
  GroupSpec diag = pslz_diag(poly::parse("x^2-5"));
  MoebiusElement g = evaluate_word(diag, "T*S*T^-1*S");
  IsometryTuple dt = tuple_embed(g, diag.embedding_order, 64);
  REQUIRE(dt.tuple_class == TupleClass::Hyperbolic);
  Direction dd = translation_direction(dt, 64);
  CHECK(dd.exact_one[0]);
  CHECK(dd.exact_one[1]);
}

TEST_CASE("axis reflections reproduce the isometry") {
  // h = [[2,0],[0,1/2]]: axis is the imaginary axis, l = 2 ln 2
  MoebiusElement h = rational_matrix(2, 1, 0, 1, 0, 1, 1, 2);
  Interval re(Rational(0), 96), im(Rational(1), 96);
  auto [l1, l2] = axis_reflections(h, 1, re, im, 96);
  CHECK(!l1.vertical);
  CHECK(!l2.vertical);
  CHECK(l1.p.mid_double() == doctest::Approx(0.0));
  CHECK(l1.rho.mid_double() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l2.rho.mid_double() == doctest::Approx(2.0).epsilon(1e-12));

  Mat2 composed = compose_reflections(l2, l1);
  CHECK(composed.a.mid_double() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(composed.d.mid_double() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::fabs(composed.b.mid_double()) < 1e-12);
  CHECK(std::fabs(composed.c.mid_double()) < 1e-12);

  // gauge freedom: another anchor on the axis, same composition
  Interval im2(Rational(2), 96);
  auto [m1, m2] = axis_reflections(h, 1, re, im2, 96);
  CHECK(m1.rho.mid_double() == doctest::Approx(2.0).epsilon(1e-12));
  Mat2 c2 = compose_reflections(m2, m1);
  CHECK(c2.a.mid_double() == doctest::Approx(2.0).epsilon(1e-12));

  // a general hyperbolic word: composition reproduces the embedded matrix
  const GroupSpec& spec = hecke5();
  MoebiusElement g = evaluate_word(spec, "T^4*S");
  FixedPoints fp = fixed_points(g, spec.identity_root(), 96);
  // anchor at the apex of the half-circle axis
  double u = fp.repulsive.x.mid_double(), v = fp.attractive.x.mid_double();
  Interval are((u + v) / 2, 160);
  Interval aim(std::fabs(v - u) / 2, 160);
  auto [g1, g2] = axis_reflections(g, spec.identity_root(), are, aim, 96);
  Mat2 gc = compose_reflections(g2, g1);
  Mat2 ge = g.factor(spec.identity_root(), 96);
  double scale = gc.a.mid_double() / ge.a.mid_double();
  CHECK(gc.b.mid_double() == doctest::Approx(scale * ge.b.mid_double()).epsilon(1e-7));
  CHECK(gc.c.mid_double() == doctest::Approx(scale * ge.c.mid_double()).epsilon(1e-7));
  CHECK(gc.d.mid_double() == doctest::Approx(scale * ge.d.mid_double()).epsilon(1e-7));
  CHECK(std::fabs(std::fabs(scale) - 1.0) < 1e-7);

  CHECK_THROWS_AS(axis_reflections(word("T"), 2, re, im, 64), Error);
}

TEST_CASE("reflection line pair relation (decision core)") {
  mpfr_prec_t p = 96;
  auto pt = [&](const Rational& v) { return Interval(v, p); };
  std::array<Interval, 2> a = {pt(Rational(1, 8)), pt(Rational(5, 8))};
  // interleaving endpoints: the lines cross
  std::array<Interval, 2> b = {pt(Rational(1, 4)), pt(Rational(3, 4))};
  CHECK(classify_reflection_line_pair(a, b).type == ProductType::Elliptic);
  // nested endpoints: disjoint lines
  std::array<Interval, 2> c = {pt(Rational(1, 4)), pt(Rational(3, 8))};
  CHECK(classify_reflection_line_pair(a, c).type == ProductType::Hyperbolic);
  // exact (dyadic) shared endpoint: tangent at the boundary
  std::array<Interval, 2> d = {pt(Rational(5, 8)), pt(Rational(7, 8))};
  CHECK(classify_reflection_line_pair(a, d).type == ProductType::Parabolic);
  // wide overlapping interval: undecided
  std::array<Interval, 2> e = {Interval(QInterval(Rational(5, 100), Rational(15, 100)), p),
                               pt(Rational(3, 4))};
  ProductPrediction und = classify_reflection_line_pair(a, e);
  CHECK(und.type == ProductType::Undecided);
  CHECK(und.degenerate);
}

TEST_CASE("product type prediction matches direct classification") {
  const GroupSpec& spec = hecke5();
  int second = spec.embedding_order[1];
  MoebiusElement e = word("T^2*S");  // elliptic at the second embedding
  MoebiusElement h = word("T^4*S");  // hyperbolic there
  REQUIRE(classify(e, second).kind == ClassKind::EllipticInfinite);
  REQUIRE(classify(h, second).kind == ClassKind::Hyperbolic);
  ProductPrediction p = product_type_predict(e, h, second, 96);
  ElementClass direct = classify(e * h, second);
  CHECK(!p.degenerate);
  if (p.type == ProductType::Hyperbolic) CHECK(direct.kind == ClassKind::Hyperbolic);
  if (p.type == ProductType::Elliptic) CHECK(direct.is_elliptic());
  if (p.type == ProductType::Parabolic) CHECK(direct.kind == ClassKind::Parabolic);

  // a high power with near-trivial rotation angle keeps L_4 next to L_3,
  // disjoint from L_1: the product is hyperbolic
  MoebiusElement tiny = e.pow(14);  // 14 * 0.35604 is nearly an integer
  REQUIRE(classify(tiny, second).kind == ClassKind::EllipticInfinite);
  ProductPrediction p2 = product_type_predict(tiny, h, second, 96);
  CHECK(!p2.degenerate);
  CHECK(p2.type == ProductType::Hyperbolic);
  CHECK(classify(tiny * h, second).kind == ClassKind::Hyperbolic);

  // seeded sweep: prediction agrees with direct classification
  std::mt19937_64 rng(3);
  long agreements = 0, degenerate = 0;
  for (int iter = 0; iter < 40; ++iter) {
    long m = 1 + static_cast<long>(rng() % 12);
    MoebiusElement em = e.pow(m);
    ProductPrediction q = product_type_predict(em, h, second, 96);
    if (q.degenerate) {
      ++degenerate;
      continue;
    }
    ElementClass dc = classify(em * h, second);
    bool match = (q.type == ProductType::Hyperbolic && dc.kind == ClassKind::Hyperbolic) ||
                 (q.type == ProductType::Elliptic && dc.is_elliptic()) ||
                 (q.type == ProductType::Parabolic && dc.kind == ClassKind::Parabolic);
    CHECK(match);
    ++agreements;
  }
  CHECK(agreements > 30);
}

TEST_CASE("schottky certificate for the conjugate pair") {
  const GroupSpec& spec = hecke5();
  MoebiusElement g = word("T^4*S");
  MoebiusElement h = word("S*T^4*S*S");
  SchottkyResult res = schottky_powers(g, h, spec.identity_root(), 20, 96);
  REQUIRE(res.found);
  CHECK(res.cert.verified);
  CHECK(res.cert.n <= 20);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(!chart::arcs_overlap(res.cert.arcs[i], res.cert.arcs[j]));
  // self-verifying: the same certificate re-checks at higher precision
  CHECK(verify_schottky(g, h, spec.identity_root(), res.cert, 192));
  CHECK(verify_schottky(g, h, spec.identity_root(), res.cert, 384));

  // random reduced words in the certified powers are nontrivial (exact)
  MoebiusElement a = g.pow(res.cert.n), b = h.pow(res.cert.n);
  MoebiusElement gens[4] = {a, a.inverse(), b, b.inverse()};
  std::mt19937_64 rng(1);
  for (int iter = 0; iter < 500; ++iter) {
    int len = 1 + static_cast<int>(rng() % 8);
    MoebiusElement w = MoebiusElement::identity(spec.field, spec.identity_root());
    int prev = -1;
    for (int k = 0; k < len; ++k) {
      int pick;
      do {
        pick = static_cast<int>(rng() % 4);
      } while (prev >= 0 && (pick ^ 1) == prev);
      w = w * gens[pick];
      prev = pick;
    }
    CHECK(!w.is_identity());
  }

  CHECK_THROWS_AS(schottky_powers(g, g.pow(2), spec.identity_root(), 5, 64), Error);
}

TEST_CASE("schottky with immediate strong dynamics") {
  // strong north-south dynamics: the first power already certifies
  MoebiusElement strong = rational_matrix(50, 1, 0, 1, 0, 1, 1, 50);
  MoebiusElement conj = rational_matrix(2, 1, 1, 1, 1, 1, 1, 1);
  MoebiusElement strong2 = conj * strong * conj.inverse();
  REQUIRE(!share_fixed_point(strong, strong2));
  SchottkyResult one = schottky_powers(strong, strong2, 1, 20, 96);
  CHECK(one.found);
  CHECK(one.cert.n == 1);

  // milder contraction needs one more power
  MoebiusElement g = rational_matrix(5, 1, 0, 1, 0, 1, 1, 5);  // fixes 0, inf
  MoebiusElement h2 = conj * g * conj.inverse();  // fixes 1, 2
  REQUIRE(!share_fixed_point(g, h2));
  SchottkyResult res = schottky_powers(g, h2, 1, 20, 96);
  CHECK(res.found);
  CHECK(res.cert.n <= 3);

  // shared fixed point at infinity
  MoebiusElement t = rational_matrix(1, 1, 1, 1, 0, 1, 1, 1);
  MoebiusElement h = t * g * t.inverse();
  CHECK_THROWS_AS(schottky_powers(g, h, 1, 5, 64), Error);
}
