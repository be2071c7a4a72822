#include "limitcone/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "limitcone/errors.hpp"

namespace limitcone {

std::vector<Letter> letters_of(const GroupSpec& spec) {
  std::vector<Letter> letters;
  for (const auto& g : spec.generators) {
    MoebiusElement inv = g.mat.inverse();
    if (inv == g.mat) {
      letters.push_back({g.name, g.mat, static_cast<int>(letters.size())});
    } else {
      int base = static_cast<int>(letters.size());
      letters.push_back({g.name, g.mat, base + 1});
      letters.push_back({g.name + "^-1", inv, base});
    }
  }
  return letters;
}

QPoly trace_polynomial(long q) {
  if (q < 0) fail(ErrorCode::BadQ, "trace polynomial needs q >= 0");
  QPoly prev = {Rational(2)};
  if (q == 0) return prev;
  QPoly cur = {Rational(0), Rational(1)};
  QPoly x = cur;
  for (long k = 1; k < q; ++k) {
    QPoly next = poly::sub(poly::mul(x, cur), prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

QPoly cos_minimal_polynomial(long n) {
  if (n < 1) fail(ErrorCode::BadQ, "cos_minimal_polynomial needs n >= 1");
  static const QPoly x_minus_2 = poly::make({Rational(-2), Rational(1)});
  static const QPoly x_plus_2 = poly::make({Rational(2), Rational(1)});
  if (n == 1) return x_minus_2;
  if (n == 2) return x_plus_2;
  // A_n^2 = (tau_n - 2)(x - 2) for odd n, (tau_n - 2)(x^2 - 4) for even n;
  // A_n carries one simple root 2cos(2*pi*k/n) for each k = 0..floor(n/2)
  QPoly base = poly::sub(trace_polynomial(n), QPoly{Rational(2)});
  QPoly squared = poly::mul(base, x_minus_2);
  if (n % 2 == 0) squared = poly::mul(squared, x_plus_2);
  auto root = poly::sqrt_exact(squared);
  if (!root) fail(ErrorCode::Internal, "trace polynomial square root failed");
  QPoly a = *root;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    QPoly q, rem;
    poly::divmod(a, cos_minimal_polynomial(d), q, rem);
    if (!poly::is_zero(rem))
      fail(ErrorCode::Internal, "divisor peeling left a remainder");
    a = std::move(q);
  }
  // phi(n)/2 for n >= 3
  long phi = 0;
  for (long k = 1; k <= n; ++k) {
    long a1 = k, b1 = n;
    while (b1) { long t = a1 % b1; a1 = b1; b1 = t; }
    if (a1 == 1) ++phi;
  }
  if (poly::degree(a) != phi / 2)
    fail(ErrorCode::Internal, "cos minimal polynomial degree mismatch");
  return a;
}

namespace {

// Default sampling knobs for construction-time embedding detection.
constexpr long kDetectDepth = 10;
constexpr long kDetectCap = 30000;

std::vector<int> default_embedding_order(const GroupSpec& provisional) {
  std::vector<bool> unbounded =
      detect_unbounded(provisional, kDetectDepth, kDetectCap);
  std::vector<int> order;
  order.push_back(provisional.identity_root());
  for (int i = 1; i <= provisional.field->degree(); ++i)
    if (i != provisional.identity_root() && unbounded[i - 1]) order.push_back(i);
  return order;
}

MoebiusElement make_element(int phi1, const FieldElement& a, const FieldElement& b,
                            const FieldElement& c, const FieldElement& d) {
  return MoebiusElement(a, b, c, d, phi1);
}

}  // namespace

GroupSpec hecke_group(long q) {
  if (q < 3) fail(ErrorCode::BadQ, "hecke group needs q >= 3");
  FieldPtr field = NumberField::create(cos_minimal_polynomial(2 * q));
  int phi1 = field->degree();  // lambda_q = 2cos(pi/q) is the largest root
  FieldElement lambda = FieldElement::generator(field);
  FieldElement zero = FieldElement::rational(field, Rational(0));
  FieldElement one = FieldElement::rational(field, Rational(1));

  // sanity: the designated root really is 2cos(pi/q)
  double target = 2.0 * std::cos(M_PI / static_cast<double>(q));
  double got = lambda.embed(phi1, 48).mid_double();
  if (std::fabs(got - target) > 1e-9)
    fail(ErrorCode::Internal, "hecke field root identification failed");

  GroupSpec spec;
  spec.field = field;
  spec.provenance = SpecProvenance::Builtin;
  spec.label = "hecke-" + std::to_string(q);
  MoebiusElement S = make_element(phi1, zero, -one, one, zero);
  MoebiusElement T = make_element(phi1, one, lambda, zero, one);
  spec.generators = {{"S", S}, {"T", T}};

  MoebiusElement I = MoebiusElement::identity(field, phi1);
  if (!((S * S) == I)) fail(ErrorCode::ConstructionInvalid, "S^2 != +-I");
  if (!((S * T).pow(q) == I)) fail(ErrorCode::ConstructionInvalid, "(ST)^q != +-I");

  GroupSpec provisional = spec;
  provisional.embedding_order = {phi1};
  spec.embedding_order = default_embedding_order(provisional);
  return spec;
}

GroupSpec triangle_q_inf_inf(long q) {
  if (q < 2) fail(ErrorCode::BadQ, "triangle (q,inf,inf) needs q >= 2");
  FieldPtr field = NumberField::create(cos_minimal_polynomial(2 * q));
  int phi1 = field->degree();
  FieldElement two_c = FieldElement::generator(field);  // 2cos(pi/q)
  FieldElement zero = FieldElement::rational(field, Rational(0));
  FieldElement one = FieldElement::rational(field, Rational(1));

  GroupSpec spec;
  spec.field = field;
  spec.provenance = SpecProvenance::Builtin;
  spec.label = "tri-qinfinf-" + std::to_string(q);
  MoebiusElement E = make_element(phi1, two_c, one, -one, zero);
  MoebiusElement P = make_element(phi1, one, two_c + Rational(2), zero, one);
  spec.generators = {{"E", E}, {"P", P}};

  // exact construction checks: E elliptic of order exactly q, P and E*P parabolic
  ElementClass ec = classify(E, phi1, std::max(8L, 2 * q));
  if (ec.kind != ClassKind::EllipticFinite || ec.order != q)
    fail(ErrorCode::ConstructionInvalid, "rotation generator is not of order q");
  FieldElement tp = P.trace();
  FieldElement tep = (E * P).trace();
  auto is_pm2 = [&](const FieldElement& t) {
    return t == FieldElement::rational(field, Rational(2)) ||
           t == FieldElement::rational(field, Rational(-2));
  };
  if (!is_pm2(tp) || !is_pm2(tep))
    fail(ErrorCode::ConstructionInvalid, "cusp product trace is not exactly +-2");

  GroupSpec provisional = spec;
  provisional.embedding_order = {phi1};
  spec.embedding_order = default_embedding_order(provisional);
  return spec;
}

GroupSpec pslz_diag(const QPoly& minpoly) {
  FieldPtr field = NumberField::create(minpoly);
  int phi1 = 1;
  FieldElement zero = FieldElement::rational(field, Rational(0));
  FieldElement one = FieldElement::rational(field, Rational(1));
  GroupSpec spec;
  spec.field = field;
  spec.provenance = SpecProvenance::Builtin;
  spec.diagonal_by_construction = true;
  spec.label = "pslz-diag-" + poly::str(minpoly);
  MoebiusElement S = make_element(phi1, zero, -one, one, zero);
  MoebiusElement T = make_element(phi1, one, one, zero, one);
  spec.generators = {{"S", S}, {"T", T}};
  spec.embedding_order.clear();
  for (int i = 1; i <= field->degree(); ++i) spec.embedding_order.push_back(i);
  return spec;
}

GroupSpec builtin_group(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos)
    fail(ErrorCode::BadSpec, "builtin group names look like hecke:5, tri-qinfinf:5, "
                             "pslz-diag:x^2-5");
  std::string kind = name.substr(0, colon);
  std::string arg = name.substr(colon + 1);
  if (kind == "hecke" || kind == "tri-qinfinf") {
    long q = 0;
    try {
      q = std::stol(arg);
    } catch (const std::exception&) {
      fail(ErrorCode::BadSpec, "bad q in builtin group name: " + name);
    }
    return kind == "hecke" ? hecke_group(q) : triangle_q_inf_inf(q);
  }
  if (kind == "pslz-diag") return pslz_diag(poly::parse(arg));
  fail(ErrorCode::BadSpec, "unknown builtin group: " + name);
}

// ---- enumeration -----------------------------------------------------------

std::string EnumerationResult::word_of(size_t index,
                                       const std::vector<Letter>& letters) const {
  if (index == 0) return "1";
  std::vector<int> seq;
  size_t cur = index;
  while (genealogy[cur].first >= 0) {
    seq.push_back(genealogy[cur].second);
    cur = genealogy[cur].first;
  }
  std::ostringstream os;
  for (size_t k = seq.size(); k-- > 0;) {
    os << letters[seq[k]].display;
    if (k > 0) os << "*";
  }
  return os.str();
}

EnumerationResult enumerate_group(const GroupSpec& spec, long depth, long cap,
                                  int threads) {
  if (depth < 0) fail(ErrorCode::BadSpec, "depth must be >= 0");
  if (cap < 1) fail(ErrorCode::BadSpec, "cap must be >= 1");
  if (threads < 1) threads = 1;
  std::vector<Letter> letters = letters_of(spec);

  EnumerationResult res;
  res.depth = depth;
  res.cap = cap;
  res.elements.push_back(MoebiusElement::identity(spec.field, spec.identity_root()));
  res.genealogy.push_back({-1, -1});
  res.word_length.push_back(0);
  res.count_per_depth.assign(1, 1);

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> dedup;
  auto key_of = [](const MoebiusElement& m) { return m.hash(0x9e3779b97f4a7c15ull); };
  dedup[key_of(res.elements[0])].push_back(0);

  auto try_insert = [&](MoebiusElement&& m, int parent, int letter) -> bool {
    std::uint64_t k = key_of(m);
    auto& bucket = dedup[k];
    for (std::uint32_t idx : bucket)
      if (res.elements[idx] == m) return false;
    bucket.push_back(static_cast<std::uint32_t>(res.elements.size()));
    res.elements.push_back(std::move(m));
    res.genealogy.push_back({parent, letter});
    res.word_length.push_back(res.word_length[parent] + 1);
    return true;
  };

  std::vector<std::uint32_t> frontier = {0};
  const size_t L = letters.size();
  const size_t block = 8192;

  for (long level = 1; level <= depth && !frontier.empty(); ++level) {
    std::vector<std::uint32_t> next;
    long added = 0;
    bool stop = false;
    for (size_t start = 0; start < frontier.size() && !stop; start += block) {
      size_t count = std::min(block, frontier.size() - start);
      std::vector<MoebiusElement> cand(count * L);
      std::vector<char> valid(count * L, 0);
      auto worker = [&](size_t w, size_t step) {
        for (size_t p = w; p < count; p += step) {
          std::uint32_t parent = frontier[start + p];
          int last = res.genealogy[parent].second;
          for (size_t li = 0; li < L; ++li) {
            if (last >= 0 && letters[last].inverse == static_cast<int>(li)) continue;
            cand[p * L + li] = res.elements[parent] * letters[li].mat;
            valid[p * L + li] = 1;
          }
        }
      };
      if (threads == 1 || count < 64) {
        worker(0, 1);
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
          pool.emplace_back(worker, static_cast<size_t>(w), static_cast<size_t>(threads));
        for (auto& t : pool) t.join();
      }
      // deterministic merge in word order
      for (size_t p = 0; p < count && !stop; ++p) {
        std::uint32_t parent = frontier[start + p];
        for (size_t li = 0; li < L; ++li) {
          if (!valid[p * L + li]) continue;
          if (static_cast<long>(res.elements.size()) >= cap) {
            res.cap_exceeded = true;
            stop = true;
            break;
          }
          if (try_insert(std::move(cand[p * L + li]), static_cast<int>(parent),
                         static_cast<int>(li))) {
            next.push_back(static_cast<std::uint32_t>(res.elements.size() - 1));
            ++added;
          }
        }
      }
    }
    res.count_per_depth.push_back(added);
    frontier = std::move(next);
    if (stop) break;
  }
  return res;
}

// ---- sampled trace data -----------------------------------------------------

std::vector<FieldElement> invariant_traces(const EnumerationResult& enumeration) {
  std::vector<FieldElement> out;
  out.reserve(enumeration.elements.size());
  for (const auto& g : enumeration.elements) {
    FieldElement t = g.trace();
    out.push_back(t * t + Rational(-2));
  }
  auto coord_less = [](const FieldElement& a, const FieldElement& b) {
    return std::lexicographical_compare(
        a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end(),
        [](const Rational& x, const Rational& y) { return x < y; });
  };
  std::sort(out.begin(), out.end(), coord_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FieldElement> invariant_traces(const GroupSpec& spec, long depth, long cap) {
  return invariant_traces(enumerate_group(spec, depth, cap));
}

std::vector<bool> detect_unbounded_traces(const FieldPtr& field,
                                          const std::vector<FieldElement>& traces) {
  int n = field->degree();
  std::vector<bool> unbounded(n, false);
  for (const auto& t : traces) {
    FieldElement margin = t * t + Rational(-9);  // |phi(t)| > 2 + 1
    for (int i = 1; i <= n; ++i)
      if (!unbounded[i - 1] && margin.sign_at(i) > 0) unbounded[i - 1] = true;
    if (std::all_of(unbounded.begin(), unbounded.end(), [](bool b) { return b; })) break;
  }
  return unbounded;
}

std::vector<bool> detect_unbounded(const GroupSpec& spec, long depth, long cap) {
  EnumerationResult e = enumerate_group(spec, depth, cap);
  std::vector<FieldElement> traces;
  traces.reserve(e.elements.size());
  for (const auto& g : e.elements) traces.push_back(g.trace());
  auto coord_less = [](const FieldElement& a, const FieldElement& b) {
    return std::lexicographical_compare(
        a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end(),
        [](const Rational& x, const Rational& y) { return x < y; });
  };
  std::sort(traces.begin(), traces.end(), coord_less);
  traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
  return detect_unbounded_traces(spec.field, traces);
}

GroupValidation validate_group(const GroupSpec& spec, long depth, long cap,
                               long order_bound) {
  GroupValidation v;
  if (spec.generators.empty()) {
    v.ok = false;
    v.notes.push_back("no generators");
    return v;
  }
  if (spec.embedding_order.empty()) {
    v.ok = false;
    v.notes.push_back("no embeddings selected");
    return v;
  }
  // determinants were enforced at construction; re-state for the report
  v.notes.push_back("determinants exactly 1");
  if (!spec.field->irreducibility_verified())
    v.notes.push_back("irreducibility unverified (degree > 5): partial checks only");

  // empirical discreteness guard at the identity embedding
  EnumerationResult e = enumerate_group(spec, depth, cap);
  long elliptic_infinite = 0;
  for (const auto& g : e.elements) {
    ElementClass c = classify(g, spec.identity_root(), order_bound);
    if (c.kind == ClassKind::EllipticInfinite) ++elliptic_infinite;
  }
  if (elliptic_infinite > 0) {
    std::ostringstream os;
    os << "identity embedding produced " << elliptic_infinite
       << " elliptic elements of infinite order (depth " << depth << ")";
    v.notes.push_back(os.str());
    if (spec.provenance == SpecProvenance::Builtin) v.ok = false;
    else v.notes.push_back("user spec is trusted; flagging only");
  } else {
    v.notes.push_back("no infinite-order elliptic classes at the identity embedding");
  }
  return v;
}

MoebiusElement evaluate_word(const GroupSpec& spec, const std::string& word) {
  MoebiusElement acc = MoebiusElement::identity(spec.field, spec.identity_root());
  std::string w;
  for (char ch : word)
    if (!std::isspace(static_cast<unsigned char>(ch))) w += ch;
  if (w.empty() || w == "1") return acc;
  size_t i = 0;
  while (i < w.size()) {
    if (w[i] == '*') { ++i; continue; }
    std::string name;
    while (i < w.size() && w[i] != '*' && w[i] != '^') name += w[i++];
    long exp = 1;
    if (i < w.size() && w[i] == '^') {
      ++i;
      std::string e;
      if (i < w.size() && (w[i] == '-' || w[i] == '+')) e += w[i++];
      while (i < w.size() && std::isdigit(static_cast<unsigned char>(w[i]))) e += w[i++];
      if (e.empty() || e == "-" || e == "+")
        fail(ErrorCode::BadSpec, "bad exponent in word: " + word);
      exp = std::stol(e);
    }
    const Generator* gen = nullptr;
    for (const auto& g : spec.generators)
      if (g.name == name) gen = &g;
    if (!gen) fail(ErrorCode::BadSpec, "unknown generator '" + name + "' in word");
    acc = acc * gen->mat.pow(exp);
  }
  return acc;
}

}  // namespace limitcone
