#include <algorithm>

#include "limitcone/errors.hpp"
#include "limitcone/limits.hpp"

namespace limitcone {

const char* zariski_verdict_name(ZariskiVerdict v) {
  switch (v) {
    case ZariskiVerdict::Dense: return "Dense";
    case ZariskiVerdict::NotDense: return "NotDense";
    case ZariskiVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ZariskiReport zariski_check(const GroupSpec& spec, long depth, long cap) {
  if (spec.r() < 2)
    fail(ErrorCode::DegreeOne, "the Zariski question needs r >= 2 embeddings");
  ZariskiReport rep;
  rep.depth = depth;
  rep.cap = cap;
  rep.r = spec.r();
  std::vector<FieldElement> traces = invariant_traces(spec, depth, cap);
  const int id_root = spec.identity_root();
  bool all_witnessed = true;
  for (int k = 1; k < spec.r(); ++k) {
    int root = spec.embedding_order[k];
    bool witnessed = false;
    for (const auto& t : traces) {
      if (compare_embeddings(t, id_root, root) != Ordering::Equal) {
        rep.witnesses.push_back({root, t});
        witnessed = true;
        break;
      }
    }
    if (!witnessed) {
      rep.fixing_embeddings.push_back(root);
      all_witnessed = false;
    }
  }
  if (all_witnessed) {
    rep.verdict = ZariskiVerdict::Dense;
    rep.depth_limited = false;  // a witness is a proof
  } else {
    rep.verdict = ZariskiVerdict::NotDense;
    rep.depth_limited = !spec.diagonal_by_construction;
  }
  return rep;
}

// ---- mixed witness search -----------------------------------------------------

namespace {

bool matches_pattern(const std::vector<ElementClass>& classes,
                     const std::vector<SlotTarget>& pattern) {
  if (classes.size() != pattern.size()) return false;
  for (size_t k = 0; k < classes.size(); ++k) {
    if (pattern[k] == SlotTarget::Hyp && classes[k].kind != ClassKind::Hyperbolic)
      return false;
    if (pattern[k] == SlotTarget::EllInf && classes[k].kind != ClassKind::EllipticInfinite)
      return false;
  }
  return true;
}

}  // namespace

MixedWitnessResult find_mixed_witness(const GroupSpec& spec,
                                      const std::vector<SlotTarget>& pattern,
                                      long depth, long cap, long budget,
                                      long order_bound) {
  if (static_cast<int>(pattern.size()) != spec.r())
    fail(ErrorCode::BadSpec, "pattern length must match r");
  MixedWitnessResult res;
  res.budget = budget;
  EnumerationResult e = enumerate_group(spec, depth, cap);
  std::vector<Letter> letters = letters_of(spec);

  std::vector<std::vector<ElementClass>> classes(e.elements.size());
  for (size_t i = 0; i < e.elements.size(); ++i)
    classes[i] = classify_tuple(e.elements[i], spec.embedding_order, order_bound);

  // phase 1: direct scan of the enumeration
  for (size_t i = 1; i < e.elements.size(); ++i) {
    ++res.exact_checks;
    if (matches_pattern(classes[i], pattern)) {
      res.found = true;
      res.element = e.elements[i];
      res.word = e.word_of(i, letters);
      return res;
    }
  }

  // phase 2: products g^m * h with g carrying elliptic slots and h an
  // all-hyperbolic tuple; product_type_predict prunes the m scan per factor
  constexpr size_t kPoolLimit = 64;
  std::vector<size_t> g_pool, h_pool;
  for (size_t i = 1; i < e.elements.size(); ++i) {
    bool any_ell = false, all_hyp = true;
    for (const auto& c : classes[i]) {
      any_ell |= c.kind == ClassKind::EllipticInfinite;
      all_hyp &= c.kind == ClassKind::Hyperbolic;
    }
    if (any_ell && g_pool.size() < kPoolLimit) g_pool.push_back(i);
    if (all_hyp && h_pool.size() < kPoolLimit) h_pool.push_back(i);
  }

  for (size_t gi : g_pool) {
    for (size_t hi : h_pool) {
      for (long m = 1; m <= budget; ++m) {
        MoebiusElement gm = e.elements[gi].pow(m);
        if (gm.is_identity()) break;
        // per-factor guidance where g^m is elliptic over a hyperbolic h factor
        bool plausible = true;
        for (int k = 0; k < spec.r() && plausible; ++k) {
          int root = spec.embedding_order[k];
          if (classes[gi][k].kind != ClassKind::EllipticInfinite) continue;
          if (classes[hi][k].kind != ClassKind::Hyperbolic) continue;
          ProductPrediction p = product_type_predict(gm, e.elements[hi], root, 64);
          ++res.predictions_used;
          if (p.degenerate) continue;  // fall through to the exact check
          if (pattern[k] == SlotTarget::Hyp && p.type != ProductType::Hyperbolic)
            plausible = false;
          if (pattern[k] == SlotTarget::EllInf && p.type != ProductType::Elliptic)
            plausible = false;
        }
        if (!plausible) continue;
        MoebiusElement cand = gm * e.elements[hi];
        ++res.exact_checks;
        if (matches_pattern(classify_tuple(cand, spec.embedding_order, order_bound),
                            pattern)) {
          res.found = true;
          res.element = cand;
          res.word = "(" + e.word_of(gi, letters) + ")^" + std::to_string(m) + "*" +
                     e.word_of(hi, letters);
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace limitcone
