#include "limitcone/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "limitcone/errors.hpp"

namespace limitcone {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) fail(ErrorCode::BadSpec, "empty rational literal");
  try {
    Rational q(t);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::BadSpec, "bad rational literal: " + s);
  }
}

std::string rational_str(const Rational& q) { return q.get_str(); }

QInterval QInterval::operator*(const QInterval& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return {std::min(std::min(a, b), std::min(c, d)),
          std::max(std::max(a, b), std::max(c, d))};
}

std::uint64_t hash_rational(const Rational& q, std::uint64_t seed) {
  // cheap limb-level fold; exact comparison resolves collisions
  auto fold = [](mpz_srcptr z) -> std::uint64_t {
    std::uint64_t h = mpz_fdiv_ui(z, 0x1fffffffffffffffull);
    if (mpz_sgn(z) < 0) h = ~h;
    return h;
  };
  std::uint64_t h = seed;
  h = hash_mix(h, fold(q.get_num_mpz_t()));
  h = hash_mix(h, fold(q.get_den_mpz_t()));
  return h;
}

namespace poly {

QPoly make(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }
bool is_zero(const QPoly& p) { return p.empty(); }
bool is_monic(const QPoly& p) { return !p.empty() && p.back() == 1; }

Rational leading(const QPoly& p) {
  if (p.empty()) fail(ErrorCode::Internal, "leading of zero polynomial");
  return p.back();
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return make(std::move(r));
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return make(std::move(r));
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return make(std::move(r));
}

QPoly scale(const QPoly& a, const Rational& c) {
  if (c == 0) return {};
  QPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

QPoly neg(const QPoly& a) { return scale(a, Rational(-1)); }

void divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  rem = a;
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lb = b.back();
  while (!rem.empty() && rem.size() >= b.size()) {
    size_t shift = rem.size() - b.size();
    Rational q = rem.back() / lb;
    quot[shift] = q;
    for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= q * b[i];
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  quot = make(std::move(quot));
}

QPoly derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<long>(i));
  return make(std::move(r));
}

QPoly monic(const QPoly& p) {
  if (p.empty()) return p;
  return scale(p, Rational(1) / p.back());
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b, q, r;
  while (!y.empty()) {
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

QPoly gcd_ext(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v) {
  QPoly r0 = a, r1 = b;
  QPoly u0 = {Rational(1)}, u1 = {};
  QPoly v0 = {}, v1 = {Rational(1)};
  QPoly q, r;
  while (!r1.empty()) {
    divmod(r0, r1, q, r);
    QPoly u2 = sub(u0, mul(q, u1));
    QPoly v2 = sub(v0, mul(q, v1));
    r0 = std::move(r1); r1 = std::move(r);
    u0 = std::move(u1); u1 = std::move(u2);
    v0 = std::move(v1); v1 = std::move(v2);
  }
  if (!r0.empty()) {
    Rational inv = Rational(1) / r0.back();
    r0 = scale(r0, inv);
    u0 = scale(u0, inv);
    v0 = scale(v0, inv);
  }
  u = std::move(u0);
  v = std::move(v0);
  return r0;
}

QPoly squarefree_part(const QPoly& p) {
  if (degree(p) <= 0) return monic(p);
  QPoly g = gcd(p, derivative(p));
  if (degree(g) == 0) return monic(p);
  QPoly q, r;
  divmod(p, g, q, r);
  return monic(q);
}

Rational eval(const QPoly& p, const Rational& x) {
  Rational r(0);
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

QInterval eval(const QPoly& p, const QInterval& x) {
  QInterval r = QInterval::point(Rational(0));
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

int sign_at(const QPoly& p, const Rational& x) { return sgn(eval(p, x)); }

std::optional<QPoly> sqrt_exact(const QPoly& p) {
  int d = degree(p);
  if (d < 0) return QPoly{};
  if (d % 2 != 0) return std::nullopt;
  if (p.back() != 1) return std::nullopt;  // callers use monic inputs
  int m = d / 2;
  QPoly b(m + 1, Rational(0));
  b[m] = 1;
  // match coefficients from the top: p[m+k] = 2*b[k] + sum over i+j=m+k, i,j>k
  for (int k = m - 1; k >= 0; --k) {
    Rational s(0);
    for (int i = k + 1; i <= m; ++i) {
      int j = m + k - i;
      if (j > k && j <= m) s += b[i] * b[j];
    }
    b[k] = (p[m + k] - s) / 2;
  }
  if (mul(b, b) != p) return std::nullopt;
  return b;
}

Rational resultant(const QPoly& a, const QPoly& b) {
  int m = degree(a), n = degree(b);
  if (m < 0 || n < 0) return Rational(0);
  if (m == 0) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r *= a[0];
    return r;
  }
  if (n == 0) {
    Rational r(1);
    for (int i = 0; i < m; ++i) r *= b[0];
    return r;
  }
  // Sylvester matrix, plain fraction Gaussian elimination (sizes here <= ~12)
  int sz = m + n;
  std::vector<std::vector<Rational>> M(sz, std::vector<Rational>(sz, Rational(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) M[r][r + (m - i)] = a[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) M[n + r][r + (n - i)] = b[i];
  Rational det(1);
  for (int c = 0; c < sz; ++c) {
    int piv = -1;
    for (int r = c; r < sz; ++r)
      if (M[r][c] != 0) { piv = r; break; }
    if (piv < 0) return Rational(0);
    if (piv != c) { std::swap(M[piv], M[c]); det = -det; }
    det *= M[c][c];
    Rational inv = Rational(1) / M[c][c];
    for (int r = c + 1; r < sz; ++r) {
      if (M[r][c] == 0) continue;
      Rational f = M[r][c] * inv;
      for (int k = c; k < sz; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return det;
}

QPoly primitive_integer(const QPoly& p) {
  if (p.empty()) return p;
  Integer l(1);
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Rational> r;
  r.reserve(p.size());
  Integer g(0);
  for (const auto& c : p) {
    Rational v = c * Rational(l);
    r.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num().get_mpz_t());
  }
  if (g != 0)
    for (auto& v : r) v /= Rational(g);
  if (!r.empty() && sgn(r.back()) < 0)
    for (auto& v : r) v = -v;
  return make(std::move(r));
}

std::string str(const QPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    Rational c = p[i];
    if (first) {
      if (sgn(c) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    Rational a = abs(c);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

QPoly parse(const std::string& s) {
  // terms: [+-] [coef] [* ] [x [^k]]
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) fail(ErrorCode::BadSpec, "empty polynomial");
  std::vector<Rational> coeffs;
  auto bump = [&](size_t deg, const Rational& c) {
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rational(0));
    coeffs[deg] += c;
  };
  size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    while (i < t.size() && (t[i] == '+' || t[i] == '-')) {
      if (t[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= t.size()) fail(ErrorCode::BadSpec, "dangling sign in polynomial: " + s);
    std::string num;
    while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '/'))
      num += t[i++];
    bool star = false;
    if (i < t.size() && t[i] == '*') { star = true; ++i; }
    size_t deg = 0;
    bool has_var = false;
    if (i < t.size() && (t[i] == 'x' || t[i] == 'X')) {
      has_var = true;
      ++i;
      deg = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        std::string e;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) e += t[i++];
        if (e.empty()) fail(ErrorCode::BadSpec, "missing exponent in polynomial: " + s);
        deg = std::stoul(e);
      }
    }
    if (!has_var && star) fail(ErrorCode::BadSpec, "bad term in polynomial: " + s);
    if (num.empty() && !has_var) fail(ErrorCode::BadSpec, "bad term in polynomial: " + s);
    Rational c = num.empty() ? Rational(1) : parse_rational(num);
    if (sign < 0) c = -c;
    bump(deg, c);
  }
  return make(std::move(coeffs));
}

// ---- Sturm -----------------------------------------------------------

int SturmChain::variations_at(const Rational& x) const {
  int var = 0, prev = 0;
  for (const auto& p : seq) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

namespace {
int sign_at_inf(const QPoly& p, bool plus) {
  if (p.empty()) return 0;
  int s = sgn(p.back());
  if (!plus && degree(p) % 2 == 1) s = -s;
  return s;
}
}  // namespace

int SturmChain::variations_at_minus_inf() const {
  int var = 0, prev = 0;
  for (const auto& p : seq) {
    int s = sign_at_inf(p, false);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int SturmChain::variations_at_plus_inf() const {
  int var = 0, prev = 0;
  for (const auto& p : seq) {
    int s = sign_at_inf(p, true);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

SturmChain sturm_chain(const QPoly& p) {
  SturmChain c;
  if (p.empty()) return c;
  c.seq.push_back(p);
  QPoly d = derivative(p);
  if (d.empty()) return c;
  c.seq.push_back(d);
  QPoly q, r;
  while (true) {
    const QPoly& a = c.seq[c.seq.size() - 2];
    const QPoly& b = c.seq.back();
    divmod(a, b, q, r);
    if (r.empty()) break;
    c.seq.push_back(neg(r));
  }
  return c;
}

int count_roots(const SturmChain& chain, const Rational& a, const Rational& b) {
  return chain.variations_at(a) - chain.variations_at(b);
}

int count_real_roots(const QPoly& squarefree) {
  SturmChain c = sturm_chain(squarefree);
  return c.variations_at_minus_inf() - c.variations_at_plus_inf();
}

Rational cauchy_root_bound(const QPoly& p) {
  if (degree(p) < 1) return Rational(1);
  Rational m(0);
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Rational a = abs(p[i] / p.back());
    if (a > m) m = a;
  }
  Rational bound = m + 1;
  Rational b(2);
  while (b < bound) b *= 2;
  return b;
}

std::vector<RootInterval> isolate_real_roots(const QPoly& squarefree) {
  std::vector<RootInterval> out;
  if (degree(squarefree) < 1) return out;
  SturmChain chain = sturm_chain(squarefree);
  Rational B = cauchy_root_bound(squarefree);
  // Invariant on every segment: p nonzero at both endpoints (true for +-B
  // since all roots lie in (-B, B)), count = #roots in the open interval.
  struct Seg { Rational lo, hi; int count; };
  std::vector<Seg> stack;
  int total = count_roots(chain, -B, B);
  if (total > 0) stack.push_back({-B, B, total});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      // exactly one simple root inside: guaranteed sign-change bracket
      out.push_back({s.lo, s.hi, false});
      continue;
    }
    // split at a non-root dyadic point near the midpoint
    Rational m = (s.lo + s.hi) / 2;
    Rational delta = (s.hi - s.lo) / 4;
    while (sign_at(squarefree, m) == 0) {
      m += delta;
      delta /= 2;
    }
    int left = count_roots(chain, s.lo, m);
    int right = s.count - left;
    if (left > 0) stack.push_back({s.lo, m, left});
    if (right > 0) stack.push_back({m, s.hi, right});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

void refine_root(const QPoly& p, RootInterval& r) {
  if (r.exact) return;
  Rational mid = (r.lo + r.hi) / 2;
  int sm = sign_at(p, mid);
  if (sm == 0) {
    r.lo = r.hi = mid;
    r.exact = true;
    return;
  }
  if (sm == sign_at(p, r.lo)) r.lo = mid;
  else r.hi = mid;
}

void refine_root_to(const QPoly& p, RootInterval& r, const Rational& eps) {
  while (!r.exact && r.hi - r.lo > eps) refine_root(p, r);
}

}  // namespace poly
}  // namespace limitcone
