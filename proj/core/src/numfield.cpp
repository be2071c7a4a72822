#include "limitcone/numfield.hpp"

#include <algorithm>
#include <sstream>

#include "limitcone/errors.hpp"

namespace limitcone {

namespace {

// Rational root search on the primitive integer form; returns true when a
// rational root exists (degree >= 2 callers treat that as reducibility).
bool has_rational_root(const QPoly& p) {
  QPoly z = poly::primitive_integer(p);
  int n = poly::degree(z);
  if (n < 2) return false;
  if (z[0] == 0) return true;  // x divides
  Integer a0 = abs(z[0].get_num());
  Integer an = abs(z.back().get_num());
  auto divisors = [](const Integer& v) {
    std::vector<Integer> ds;
    Integer i(1);
    while (i * i <= v) {
      if (v % i == 0) {
        ds.push_back(i);
        Integer j = v / i;
        if (j != i) ds.push_back(j);
      }
      ++i;
    }
    return ds;
  };
  for (const Integer& u : divisors(a0))
    for (const Integer& v : divisors(an)) {
      Rational cand(u, v);
      cand.canonicalize();
      if (poly::eval(z, cand) == 0 || poly::eval(z, -cand) == 0) return true;
    }
  return false;
}

// Monic quadratic factor search. A monic integer quadratic factor of the
// scaled-monic integer polynomial has as roots two of the real roots, so
// candidate (sum, product) pairs come from refined root-pair intervals.
bool has_quadratic_factor(const QPoly& monic_p,
                          const std::vector<poly::RootInterval>& roots) {
  int n = poly::degree(monic_p);
  if (n < 4) return false;
  // scale x -> y/N so the polynomial becomes monic with integer coefficients
  Integer N(1);
  for (const auto& c : monic_p) mpz_lcm(N.get_mpz_t(), N.get_mpz_t(), c.get_den().get_mpz_t());
  QPoly q(monic_p.size());
  Rational Nq(N);
  Rational pw(1);
  for (int i = n; i >= 0; --i) {
    q[i] = monic_p[i] * pw;
    pw *= Nq;
  }
  std::vector<poly::RootInterval> scaled = roots;
  for (auto& r : scaled) {
    r.lo *= Nq;
    r.hi *= Nq;
  }
  Rational half(1, 2);
  for (size_t i = 0; i < scaled.size(); ++i)
    for (size_t j = i + 1; j < scaled.size(); ++j) {
      poly::RootInterval a = scaled[i], b = scaled[j];
      QInterval s, t;
      // shrink until sum and product intervals each contain at most one integer
      while (true) {
        QInterval ia = a.as_qinterval(), ib = b.as_qinterval();
        s = ia + ib;
        t = ia * ib;
        if (s.width() < half && t.width() < half) break;
        poly::refine_root(q, a);
        poly::refine_root(q, b);
      }
      Integer s0, t0;
      mpz_cdiv_q(s0.get_mpz_t(), s.lo.get_num().get_mpz_t(), s.lo.get_den().get_mpz_t());
      mpz_cdiv_q(t0.get_mpz_t(), t.lo.get_num().get_mpz_t(), t.lo.get_den().get_mpz_t());
      if (Rational(s0) > s.hi || Rational(t0) > t.hi) continue;
      QPoly f = poly::make({Rational(t0), -Rational(s0), Rational(1)});
      QPoly quot, rem;
      poly::divmod(q, f, quot, rem);
      if (poly::is_zero(rem)) return true;
    }
  return false;
}

}  // namespace

FieldPtr NumberField::create(const QPoly& minpoly) {
  int n = poly::degree(minpoly);
  if (n < 1) fail(ErrorCode::BadSpec, "minimal polynomial must have degree >= 1");
  if (!poly::is_monic(minpoly)) fail(ErrorCode::BadSpec, "minimal polynomial must be monic");
  QPoly g = poly::gcd(minpoly, poly::derivative(minpoly));
  if (poly::degree(g) > 0)
    fail(ErrorCode::NotSquarefree, "minimal polynomial is not squarefree");
  if (poly::count_real_roots(minpoly) != n)
    fail(ErrorCode::NotTotallyReal, "polynomial has fewer real roots than its degree");

  auto roots = poly::isolate_real_roots(minpoly);
  if (static_cast<int>(roots.size()) != n)
    fail(ErrorCode::Internal, "root isolation count mismatch");

  if (n >= 2 && has_rational_root(minpoly))
    fail(ErrorCode::NotIrreducible, "minimal polynomial has a rational root");
  if (n >= 4 && has_quadratic_factor(minpoly, roots))
    fail(ErrorCode::NotIrreducible, "minimal polynomial has a quadratic factor");

  auto f = std::shared_ptr<NumberField>(new NumberField());
  f->minpoly_ = minpoly;
  f->irreducible_verified_ = (n <= 5);
  f->roots_ = std::move(roots);
  // theta^k mod minpoly for k = 0 .. 2n-2
  f->powers_.resize(2 * n - 1);
  for (int k = 0; k < n; ++k) {
    f->powers_[k].assign(n, Rational(0));
    f->powers_[k][k] = 1;
  }
  for (int k = n; k <= 2 * n - 2; ++k) {
    const auto& prev = f->powers_[k - 1];
    std::vector<Rational> cur(n, Rational(0));
    for (int i = 0; i + 1 < n; ++i) cur[i + 1] = prev[i];
    const Rational& top = prev[n - 1];
    if (top != 0)
      for (int i = 0; i < n; ++i) cur[i] -= top * minpoly[i];
    f->powers_[k] = std::move(cur);
  }
  return f;
}

QInterval NumberField::root_interval(int index) const {
  if (index < 1 || index > degree()) fail(ErrorCode::BadIndex, "root index out of range");
  std::lock_guard<std::mutex> lk(mu_);
  return roots_[index - 1].as_qinterval();
}

QInterval NumberField::root_interval(int index, const Rational& eps) const {
  if (index < 1 || index > degree()) fail(ErrorCode::BadIndex, "root index out of range");
  std::lock_guard<std::mutex> lk(mu_);
  poly::refine_root_to(minpoly_, roots_[index - 1], eps);
  return roots_[index - 1].as_qinterval();
}

const std::vector<Rational>& NumberField::theta_power(int k) const {
  return powers_.at(k);
}

// ---- FieldElement ----------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) fail(ErrorCode::Internal, "element without field");
  if (coords_.size() > static_cast<size_t>(field_->degree()))
    fail(ErrorCode::BadSpec, "more coordinates than the field degree");
  coords_.resize(field_->degree(), Rational(0));
}

FieldElement FieldElement::rational(FieldPtr field, const Rational& value) {
  std::vector<Rational> c(field->degree(), Rational(0));
  c[0] = value;
  return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::generator(FieldPtr field) {
  std::vector<Rational> c(field->degree(), Rational(0));
  if (field->degree() == 1) {
    // theta is the rational root itself
    c[0] = -field->minpoly()[0];
  } else {
    c[1] = 1;
  }
  return FieldElement(std::move(field), std::move(c));
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

void FieldElement::check_same_field(const FieldElement& o) const {
  if (field_ != o.field_)
    fail(ErrorCode::FieldMismatch, "elements of different number fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(o);
  std::vector<Rational> c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_field(o);
  std::vector<Rational> c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] - o.coords_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  std::vector<Rational> c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator+(const Rational& v) const {
  std::vector<Rational> c = coords_;
  c[0] += v;
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const Rational& v) const {
  std::vector<Rational> c = coords_;
  for (auto& x : c) x *= v;
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(o);
  int n = field_->degree();
  if (n == 1)
    return FieldElement(field_, {coords_[0] * o.coords_[0]});
  std::vector<Rational> conv(2 * n - 1, Rational(0));
  for (int i = 0; i < n; ++i) {
    if (coords_[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (o.coords_[j] == 0) continue;
      conv[i + j] += coords_[i] * o.coords_[j];
    }
  }
  std::vector<Rational> c(conv.begin(), conv.begin() + n);
  for (int k = n; k <= 2 * n - 2; ++k) {
    if (conv[k] == 0) continue;
    const auto& pw = field_->theta_power(k);
    for (int i = 0; i < n; ++i) c[i] += conv[k] * pw[i];
  }
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero field element");
  int n = field_->degree();
  if (n == 1)
    return FieldElement(field_, {Rational(1) / coords_[0]});
  QPoly u, v;
  QPoly g = poly::gcd_ext(as_poly(), field_->minpoly(), u, v);
  if (poly::degree(g) != 0)
    fail(ErrorCode::NotIrreducible,
         "element is a zero divisor: declared minimal polynomial is reducible");
  std::vector<Rational> c(u.begin(), u.end());
  return FieldElement(field_, std::move(c)) * (Rational(1) / g[0]);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && coords_ == o.coords_;
}

int FieldElement::sign_at(int root_index) const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(coords_[0]);
  QPoly U = as_poly();
  int futile = 0;
  Rational eps = field_->root_interval(root_index).width();
  while (true) {
    QInterval x = field_->root_interval(root_index, eps);
    int s = poly::eval(U, x).known_sign();
    if (s != 0) return s;
    eps /= 16;
    if (++futile == 64) {
      // Only reachable when the declared minimal polynomial is reducible and
      // this element vanishes at the chosen root.
      QPoly g = poly::gcd(U, field_->minpoly());
      if (poly::degree(g) > 0) {
        QInterval xi = field_->root_interval(root_index, eps);
        if (poly::eval(g, xi).contains_zero())
          fail(ErrorCode::NotIrreducible,
               "nonzero element vanishes at an embedding: declared minimal "
               "polynomial is reducible");
      }
    }
  }
}

QInterval FieldElement::embed_q(int root_index, long bits) const {
  Rational target(Integer(1), Integer(1) << bits);
  if (is_rational()) return QInterval::point(coords_[0]);
  QPoly U = as_poly();
  Rational eps = field_->root_interval(root_index).width();
  while (true) {
    QInterval x = field_->root_interval(root_index, eps);
    QInterval v = poly::eval(U, x);
    if (v.width() <= target) return v;
    eps /= 16;
  }
}

Interval FieldElement::embed(int root_index, long bits) const {
  return Interval(embed_q(root_index, bits),
                  static_cast<mpfr_prec_t>(std::max(64L, bits + 16)));
}

std::uint64_t FieldElement::hash(std::uint64_t seed) const {
  std::uint64_t h = seed;
  for (const auto& c : coords_) h = hash_rational(c, h);
  return h;
}

std::string FieldElement::str(const std::string& var) const {
  return poly::str(as_poly(), var);
}

Ordering compare_at(const FieldElement& a, const FieldElement& b, int root_index) {
  int s = (a - b).sign_at(root_index);
  return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}

Ordering compare_embeddings(const FieldElement& e, int i, int j) {
  if (i == j) return Ordering::Equal;
  if (e.is_rational()) return Ordering::Equal;
  const int n = e.field()->degree();
  if (i < 1 || i > n || j < 1 || j > n) fail(ErrorCode::BadIndex, "embedding index");
  // fast path: interval separation
  for (long bits : {24L, 64L, 160L, 384L}) {
    QInterval a = e.embed_q(i, bits), b = e.embed_q(j, bits);
    if (a.hi < b.lo) return Ordering::Less;
    if (b.hi < a.lo) return Ordering::Greater;
  }
  // exact equality decision: both values are roots of the characteristic
  // polynomial chi(y) = prod_k (y - phi_k(e)); if they settle inside the
  // same isolating interval of its squarefree part they are equal.
  QPoly U = poly::make(e.coords());
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= n; ++k) {
    Rational yk(k);
    // chi(yk) = Res_x(minpoly(x), yk - U(x))
    QPoly shifted = poly::sub(QPoly{yk}, U);
    xs.push_back(yk);
    ys.push_back(poly::resultant(e.field()->minpoly(), shifted));
  }
  // Lagrange interpolation of chi (degree n)
  QPoly chi;
  for (int k = 0; k <= n; ++k) {
    QPoly term{ys[k]};
    for (int m = 0; m <= n; ++m) {
      if (m == k) continue;
      QPoly lin = poly::make({-xs[m], Rational(1)});
      term = poly::scale(poly::mul(term, lin), Rational(1) / (xs[k] - xs[m]));
    }
    chi = poly::add(chi, term);
  }
  QPoly S = poly::squarefree_part(chi);
  auto isolated = poly::isolate_real_roots(S);
  long bits = 512;
  while (true) {
    QInterval a = e.embed_q(i, bits), b = e.embed_q(j, bits);
    if (a.hi < b.lo) return Ordering::Less;
    if (b.hi < a.lo) return Ordering::Greater;
    int ia = -1, ib = -1;
    for (size_t k = 0; k < isolated.size(); ++k) {
      QInterval r = isolated[k].as_qinterval();
      if (r.lo <= a.lo && a.hi <= r.hi) ia = static_cast<int>(k);
      if (r.lo <= b.lo && b.hi <= r.hi) ib = static_cast<int>(k);
    }
    if (ia >= 0 && ia == ib) return Ordering::Equal;
    bits *= 2;
  }
}

FieldElement chebyshev_trace(long l, const FieldElement& t) {
  if (l < 0) fail(ErrorCode::BadIndex, "chebyshev_trace needs l >= 0");
  FieldElement two = FieldElement::rational(t.field(), Rational(2));
  if (l == 0) return two;
  if (l == 1) return t;
  FieldElement prev = two, cur = t;
  for (long k = 1; k < l; ++k) {
    FieldElement next = t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace limitcone
