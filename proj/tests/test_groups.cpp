#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "limitcone/errors.hpp"
#include "limitcone/groups.hpp"

using namespace limitcone;

TEST_CASE("trace polynomials and cos minimal polynomials") {
  // tau_2 = x^2 - 2, tau_3 = x^3 - 3x
  CHECK(trace_polynomial(2) == poly::parse("x^2-2"));
  CHECK(trace_polynomial(3) == poly::parse("x^3-3*x"));
  // textbook minimal polynomials of 2cos(2 pi / n)
  CHECK(cos_minimal_polynomial(1) == poly::parse("x-2"));
  CHECK(cos_minimal_polynomial(2) == poly::parse("x+2"));
  CHECK(cos_minimal_polynomial(3) == poly::parse("x+1"));
  CHECK(cos_minimal_polynomial(4) == poly::parse("x"));
  CHECK(cos_minimal_polynomial(5) == poly::parse("x^2+x-1"));
  CHECK(cos_minimal_polynomial(6) == poly::parse("x-1"));
  CHECK(cos_minimal_polynomial(7) == poly::parse("x^3+x^2-2*x-1"));
  CHECK(cos_minimal_polynomial(8) == poly::parse("x^2-2"));
  CHECK(cos_minimal_polynomial(9) == poly::parse("x^3-3*x+1"));
  CHECK(cos_minimal_polynomial(10) == poly::parse("x^2-x-1"));
  CHECK(cos_minimal_polynomial(12) == poly::parse("x^2-3"));
  // interval verification at the designated root (largest root = 2cos(pi/q))
  for (long n : {10L, 14L, 16L, 18L}) {
    QPoly p = cos_minimal_polynomial(n);
    FieldPtr f = NumberField::create(p);
    double target = 2.0 * std::cos(2.0 * M_PI / static_cast<double>(n));
    QInterval top = f->root_interval(f->degree(), Rational(1, 1 << 30));
    CHECK(mpq_get_d(top.lo.get_mpq_t()) == doctest::Approx(target).epsilon(1e-7));
  }
}

TEST_CASE("hecke group construction") {
  GroupSpec h3 = hecke_group(3);
  CHECK(h3.field->degree() == 1);
  CHECK(h3.r() == 1);
  // lambda_3 = 1: T = [[1,1],[0,1]], the modular group
  CHECK(h3.generators[1].mat.b() == FieldElement::rational(h3.field, Rational(1)));

  GroupSpec h5 = hecke_group(5);
  CHECK(h5.field->minpoly() == poly::parse("x^2-x-1"));
  CHECK(h5.r() == 2);
  CHECK(h5.identity_root() == 2);  // golden ratio root
  CHECK(h5.embedding_order == std::vector<int>{2, 1});

  GroupSpec h4 = hecke_group(4);
  CHECK(h4.field->minpoly() == poly::parse("x^2-2"));

  CHECK_THROWS_AS(static_cast<void>(hecke_group(2)), Error);

  // relation suite: S^2 = +-I, (ST)^q = +-I
  for (const GroupSpec* s : {&h3, &h5, &h4}) {
    MoebiusElement S = s->generators[0].mat, T = s->generators[1].mat;
    CHECK((S * S).is_identity());
    long q = s == &h3 ? 3 : (s == &h5 ? 5 : 4);
    CHECK((S * T).pow(q).is_identity());
    CHECK(!(S * T).pow(q - 1).is_identity());
  }
}

TEST_CASE("triangle (q, inf, inf) construction") {
  GroupSpec t5 = triangle_q_inf_inf(5);
  CHECK(t5.field->minpoly() == poly::parse("x^2-x-1"));
  CHECK(t5.r() == 2);
  MoebiusElement E = t5.generators[0].mat, P = t5.generators[1].mat;
  CHECK(E.pow(5).is_identity());
  CHECK(!E.pow(4).is_identity());
  FieldElement tep = (E * P).trace();
  CHECK((tep == FieldElement::rational(t5.field, Rational(2)) ||
         tep == FieldElement::rational(t5.field, Rational(-2))));

  GroupSpec t2 = triangle_q_inf_inf(2);
  CHECK(t2.generators[0].mat.pow(2).is_identity());
  GroupSpec t3 = triangle_q_inf_inf(3);
  CHECK(t3.field->degree() == 1);

  CHECK_THROWS_AS(static_cast<void>(triangle_q_inf_inf(1)), Error);
}

TEST_CASE("builtin name parsing") {
  CHECK(builtin_group("hecke:5").label == "hecke-5");
  CHECK(builtin_group("tri-qinfinf:5").label == "tri-qinfinf-5");
  GroupSpec d = builtin_group("pslz-diag:x^2-5");
  CHECK(d.diagonal_by_construction);
  CHECK(d.r() == 2);
  CHECK_THROWS_AS(static_cast<void>(builtin_group("nonsense:13")), Error);
  CHECK_THROWS_AS(static_cast<void>(builtin_group("hecke")), Error);
}

TEST_CASE("enumeration: depth 0 and depth 1") {
  GroupSpec spec = hecke_group(5);
  EnumerationResult e0 = enumerate_group(spec, 0, 1000);
  CHECK(e0.elements.size() == 1);
  CHECK(e0.count_per_depth == std::vector<long>{1});

  // depth 1: {S, T, T^-1}; S^-1 = S projectively
  EnumerationResult e1 = enumerate_group(spec, 1, 1000);
  CHECK(e1.elements.size() == 4);
  CHECK(e1.count_per_depth == std::vector<long>{1, 3});
  std::vector<Letter> letters = letters_of(spec);
  CHECK(letters.size() == 3);  // S, T, T^-1
  CHECK(e1.word_of(0, letters) == "1");
  CHECK(e1.word_of(1, letters) == "S");
}

TEST_CASE("enumeration matches the naive dedup oracle at depth 4") {
  GroupSpec spec = hecke_group(5);
  EnumerationResult e = enumerate_group(spec, 4, 100000);

  // oracle: generate all reduced words of length <= 4 directly, multiply,
  // then deduplicate projectively by exact comparison
  std::vector<Letter> letters = letters_of(spec);
  std::vector<MoebiusElement> all = {MoebiusElement::identity(spec.field, 2)};
  std::vector<std::pair<MoebiusElement, int>> frontier = {{all[0], -1}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::pair<MoebiusElement, int>> next;
    for (const auto& [m, last] : frontier)
      for (size_t li = 0; li < letters.size(); ++li) {
        if (last >= 0 && letters[last].inverse == static_cast<int>(li)) continue;
        next.push_back({m * letters[li].mat, static_cast<int>(li)});
      }
    for (const auto& [m, last] : next) all.push_back(m);
    frontier = std::move(next);
  }
  std::vector<MoebiusElement> dedup;
  for (const auto& m : all) {
    bool seen = false;
    for (const auto& d : dedup)
      if (d == m) { seen = true; break; }
    if (!seen) dedup.push_back(m);
  }
  CHECK(e.elements.size() == dedup.size());
  // every BFS element appears in the oracle set
  for (const auto& m : e.elements) {
    bool seen = false;
    for (const auto& d : dedup)
      if (d == m) { seen = true; break; }
    CHECK(seen);
  }
}

TEST_CASE("enumeration determinism and worker independence") {
  GroupSpec spec = hecke_group(5);
  EnumerationResult a = enumerate_group(spec, 6, 100000, 1);
  EnumerationResult b = enumerate_group(spec, 6, 100000, 3);
  REQUIRE(a.elements.size() == b.elements.size());
  for (size_t i = 0; i < a.elements.size(); ++i) {
    CHECK(a.elements[i] == b.elements[i]);
    CHECK(a.genealogy[i] == b.genealogy[i]);
  }
  CHECK(a.count_per_depth == b.count_per_depth);
}

TEST_CASE("enumeration cap truncates deterministically") {
  GroupSpec spec = hecke_group(5);
  EnumerationResult e = enumerate_group(spec, 8, 50);
  CHECK(e.cap_exceeded);
  CHECK(e.elements.size() == 50);
  EnumerationResult f = enumerate_group(spec, 8, 50);
  for (size_t i = 0; i < 50; ++i) CHECK(e.elements[i] == f.elements[i]);
  // prefix property: the first 50 elements of a bigger run coincide
  EnumerationResult g = enumerate_group(spec, 8, 100000);
  CHECK(!g.cap_exceeded);
  for (size_t i = 0; i < 50; ++i) CHECK(e.elements[i] == g.elements[i]);
}

TEST_CASE("no two enumerated elements are projectively equal") {
  GroupSpec spec = hecke_group(5);
  EnumerationResult e = enumerate_group(spec, 5, 100000);
  for (size_t i = 0; i < e.elements.size(); ++i)
    for (size_t j = i + 1; j < e.elements.size(); ++j)
      REQUIRE(!(e.elements[i] == e.elements[j]));
}

TEST_CASE("invariant traces") {
  GroupSpec spec = hecke_group(5);
  EnumerationResult e0 = enumerate_group(spec, 0, 10);
  std::vector<FieldElement> t0 = invariant_traces(e0);
  REQUIRE(t0.size() == 1);
  CHECK(t0[0] == FieldElement::rational(spec.field, Rational(2)));

  // depth >= 2 contains lambda^2 - 2 = lambda - 1 (from tr(TS) = lambda)
  std::vector<FieldElement> t2 = invariant_traces(spec, 2, 100000);
  FieldElement lm1 = FieldElement::generator(spec.field) - Rational(1);
  CHECK(std::count(t2.begin(), t2.end(), lm1) == 1);

  // hecke(3): all invariant traces rational
  GroupSpec h3 = hecke_group(3);
  for (const auto& t : invariant_traces(h3, 4, 100000)) CHECK(t.is_rational());
}

TEST_CASE("detect_unbounded") {
  GroupSpec h5 = hecke_group(5);
  std::vector<bool> u5 = detect_unbounded(h5, 8, 30000);
  CHECK(u5 == std::vector<bool>{true, true});

  GroupSpec h3 = hecke_group(3);
  // depth 4 only reaches |trace| = 3, exactly on the margin; depth 6 exceeds it
  CHECK(detect_unbounded(h3, 4, 10000) == std::vector<bool>{false});
  CHECK(detect_unbounded(h3, 6, 10000) == std::vector<bool>{true});

  // diagonal spec: identical rational traces at both embeddings, both unbounded
  GroupSpec d = pslz_diag(poly::parse("x^2-5"));
  CHECK(detect_unbounded(d, 6, 10000) == std::vector<bool>{true, true});
  CHECK(d.r() == 2);  // r is NOT reduced for the diagonal spec
}

TEST_CASE("group validation") {
  GroupValidation v5 = validate_group(hecke_group(5));
  CHECK(v5.ok);
  GroupValidation vt = validate_group(triangle_q_inf_inf(5));
  CHECK(vt.ok);
  GroupValidation vd = validate_group(pslz_diag(poly::parse("x^2-5")));
  CHECK(vd.ok);
}

TEST_CASE("word evaluation") {
  GroupSpec spec = hecke_group(5);
  CHECK(evaluate_word(spec, "1").is_identity());
  CHECK(evaluate_word(spec, "S*S").is_identity());
  CHECK(evaluate_word(spec, "T^2*S") ==
        evaluate_word(spec, "T") * evaluate_word(spec, "T") * evaluate_word(spec, "S"));
  CHECK(evaluate_word(spec, "T^-1*T").is_identity());
  CHECK_THROWS_AS(static_cast<void>(evaluate_word(spec, "X")), Error);
}
