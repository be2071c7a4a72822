#include <algorithm>
#include <cmath>

#include "limitcone/errors.hpp"
#include "limitcone/limits.hpp"

namespace limitcone {

namespace {

// translation length interval from a trace known to be hyperbolic at the root
Interval ell_from_trace(const FieldElement& t, int root_index, long bits) {
  long in_bits = bits + 8;
  while (true) {
    Interval half_tr =
        t.embed(root_index, in_bits).abs() / Interval::exact_int(2, in_bits + 16);
    Interval ell = half_tr.acosh() * Interval::exact_int(2, in_bits + 16);
    if (ell.width_below(bits)) return ell;
    in_bits *= 2;
  }
}

}  // namespace

DirectionCloud direction_cloud(const GroupSpec& spec, long depth, long cap, long bits) {
  return direction_cloud(spec, enumerate_group(spec, depth, cap), bits);
}

DirectionCloud direction_cloud(const GroupSpec& spec, const EnumerationResult& e,
                               long bits) {
  if (spec.r() < 2) fail(ErrorCode::DegreeOne, "direction clouds need r >= 2");
  std::vector<Letter> letters = letters_of(spec);
  DirectionCloud cloud;
  cloud.depth = e.depth;
  cloud.cap = e.cap;
  cloud.bits = bits;
  cloud.truncated = e.cap_exceeded;
  for (size_t i = 1; i < e.elements.size(); ++i) {
    std::vector<ElementClass> classes = classify_tuple(e.elements[i], spec.embedding_order);
    bool any_hyp = std::any_of(classes.begin(), classes.end(), [](const ElementClass& c) {
      return c.kind == ClassKind::Hyperbolic;
    });
    if (!any_hyp) continue;
    IsometryTuple t;
    t.source = e.elements[i];
    t.embedding_order = spec.embedding_order;
    t.classes = std::move(classes);
    t.tuple_class = tuple_class_of(t.classes);
    Direction d = translation_direction(t, bits);
    d.word = e.word_of(i, letters);
    d.source_index = i;
    cloud.samples.push_back(std::move(d));
  }
  return cloud;
}

namespace {

struct RatioSample {
  double mid;
  int word_length;
  bool exact_zero;
  bool exact_one;
  size_t element;  // enumeration index, for certified recomputation
};

int affine_dimension(const std::vector<std::vector<double>>& pts) {
  if (pts.empty()) return -1;
  size_t d = pts[0].size();
  std::vector<std::vector<double>> rows;
  for (size_t i = 1; i < pts.size(); ++i) {
    std::vector<double> r(d);
    for (size_t k = 0; k < d; ++k) r[k] = pts[i][k] - pts[0][k];
    rows.push_back(std::move(r));
  }
  int rank = 0;
  for (size_t col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
    size_t piv = rank;
    for (size_t r2 = rank; r2 < rows.size(); ++r2)
      if (std::fabs(rows[r2][col]) > std::fabs(rows[piv][col])) piv = r2;
    if (piv >= rows.size() || std::fabs(rows[piv][col]) < 1e-9) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r2 = rank + 1; r2 < rows.size(); ++r2) {
      double f = rows[r2][col] / rows[rank][col];
      for (size_t k = col; k < d; ++k) rows[r2][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<ConeReport> cone_analysis(const GroupSpec& spec,
                                      const std::vector<long>& depths, long cap,
                                      long bits) {
  if (depths.empty()) fail(ErrorCode::BadSpec, "no depths requested");
  long max_depth = *std::max_element(depths.begin(), depths.end());
  return cone_analysis(spec, enumerate_group(spec, max_depth, cap), depths, bits);
}

std::vector<ConeReport> cone_analysis(const GroupSpec& spec, const EnumerationResult& e,
                                      const std::vector<long>& depths, long bits) {
  if (spec.r() < 2) fail(ErrorCode::DegreeOne, "cone analysis needs r >= 2");
  if (depths.empty()) fail(ErrorCode::BadSpec, "no depths requested");

  const int r = spec.r();
  const int id_root = spec.identity_root();
  std::vector<RatioSample> all;     // r == 2 ratio samples
  std::vector<int> sample_kind;     // 0 hyp, 1 mixed per direction sample
  std::vector<int> sample_wl;
  std::vector<std::vector<double>> dirs_mid;  // r >= 3 normalized midpoints
  bool halfspace = true;
  long skipped_inf = 0;
  long total = 0, hyp_count = 0, mixed_count = 0;

  for (size_t i = 1; i < e.elements.size(); ++i) {
    const MoebiusElement& g = e.elements[i];
    std::vector<ElementClass> classes = classify_tuple(g, spec.embedding_order);
    bool any_hyp = false, all_hyp = true;
    for (const auto& c : classes) {
      any_hyp |= c.kind == ClassKind::Hyperbolic;
      all_hyp &= c.kind == ClassKind::Hyperbolic;
    }
    if (!any_hyp) continue;
    ++total;
    if (all_hyp) ++hyp_count; else ++mixed_count;
    sample_kind.push_back(all_hyp ? 0 : 1);
    sample_wl.push_back(e.word_length[i]);

    FieldElement t = g.trace();
    FieldElement t2 = t * t;
    // exact half-space check: l_1 >= l_i for all i
    bool first_hyp = classes[0].kind == ClassKind::Hyperbolic;
    for (int k = 1; k < r && halfspace; ++k) {
      if (classes[k].kind != ClassKind::Hyperbolic) continue;  // l_i = 0 <= l_1
      if (!first_hyp) { halfspace = false; break; }
      if (compare_embeddings(t2, id_root, spec.embedding_order[k]) == Ordering::Less)
        halfspace = false;
    }

    if (r == 2) {
      RatioSample s{};
      s.word_length = e.word_length[i];
      s.element = i;
      if (classes[0].kind != ClassKind::Hyperbolic) {
        ++skipped_inf;  // ratio l_2/l_1 undefined
        sample_kind.pop_back();
        sample_wl.pop_back();
        --total;
        --mixed_count;
        continue;
      }
      if (classes[1].kind != ClassKind::Hyperbolic) {
        s.mid = 0.0;
        s.exact_zero = true;
      } else {
        Ordering o = compare_embeddings(t2, spec.embedding_order[1], id_root);
        if (o == Ordering::Equal) {
          s.mid = 1.0;
          s.exact_one = true;
        } else {
          Interval l1 = ell_from_trace(t, id_root, 48);
          Interval l2 = ell_from_trace(t, spec.embedding_order[1], 48);
          s.mid = (l2 / l1).mid_double();
        }
      }
      all.push_back(s);
    } else {
      IsometryTuple tt;
      tt.source = g;
      tt.embedding_order = spec.embedding_order;
      tt.classes = classes;
      tt.tuple_class = tuple_class_of(classes);
      Direction d = translation_direction(tt, 48);
      std::vector<double> mid(r);
      for (int k = 0; k < r; ++k) mid[k] = d.coords[k].mid_double();
      dirs_mid.push_back(std::move(mid));
    }
  }

  std::vector<ConeReport> reports;
  for (long depth : depths) {
    ConeReport rep;
    rep.r = r;
    rep.depth = depth;
    rep.cap = e.cap;
    rep.bits = bits;
    rep.truncated = e.cap_exceeded;
    rep.halfspace_holds = halfspace;
    rep.skipped_infinite_ratio = skipped_inf;
    for (size_t s = 0; s < sample_wl.size(); ++s) {
      if (sample_wl[s] > depth) continue;
      ++rep.samples_total;
      if (sample_kind[s] == 0) ++rep.samples_hyperbolic;
      else ++rep.samples_mixed;
    }
    if (r == 2) {
      size_t min_at = SIZE_MAX, max_at = SIZE_MAX;
      for (size_t s = 0; s < all.size(); ++s) {
        if (all[s].word_length > depth) continue;
        rep.ratios.push_back(all[s].mid);
        if (min_at == SIZE_MAX || all[s].mid < all[min_at].mid) min_at = s;
        if (max_at == SIZE_MAX || all[s].mid > all[max_at].mid) max_at = s;
      }
      std::sort(rep.ratios.begin(), rep.ratios.end());
      if (!rep.ratios.empty()) {
        rep.ratio_min = rep.ratios.front();
        rep.ratio_max = rep.ratios.back();
        rep.max_gap = 0;
        for (size_t s = 1; s < rep.ratios.size(); ++s)
          rep.max_gap = std::max(rep.max_gap, rep.ratios[s] - rep.ratios[s - 1]);
        // certified enclosures for the extreme samples
        auto certify = [&](const RatioSample& s, double& lo, double& hi) {
          if (s.exact_zero) { lo = hi = 0.0; return; }
          if (s.exact_one) { lo = hi = 1.0; return; }
          const MoebiusElement& g = e.elements[s.element];
          FieldElement t = g.trace();
          Interval ratio = ell_from_trace(t, spec.embedding_order[1], bits) /
                           ell_from_trace(t, id_root, bits);
          lo = std::nextafter(ratio.lo().to_double(), -1.0);
          hi = std::nextafter(ratio.hi().to_double(), 2.0);
        };
        if (min_at != SIZE_MAX) certify(all[min_at], rep.ratio_min_lo, rep.ratio_min_hi);
        if (max_at != SIZE_MAX) certify(all[max_at], rep.ratio_max_lo, rep.ratio_max_hi);
      }
    } else {
      // for r >= 3 sample_wl and dirs_mid stay in one-to-one order
      std::vector<std::vector<double>> pts;
      for (size_t s = 0; s < dirs_mid.size(); ++s)
        if (sample_wl[s] <= depth) pts.push_back(dirs_mid[s]);
      rep.hull_dimension = affine_dimension(pts);
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

ConeReport cone_report(const GroupSpec& spec, long depth, long cap, long bits) {
  return cone_analysis(spec, {depth}, cap, bits).front();
}

ConeReport cone_hull(const std::vector<Direction>& cloud) {
  if (cloud.empty()) fail(ErrorCode::EmptyCloud, "cone hull of an empty cloud");
  const int r = static_cast<int>(cloud.front().coords.size());
  ConeReport rep;
  rep.r = r;
  rep.samples_total = static_cast<long>(cloud.size());
  for (const auto& d : cloud) {
    if (d.mixed) ++rep.samples_mixed;
    else ++rep.samples_hyperbolic;
    // half-space from the normalized coordinates themselves
    bool first_is_one = d.exact_one[0];
    if (!first_is_one) rep.halfspace_holds = false;
  }
  if (r == 2) {
    for (const auto& d : cloud) {
      double ratio;
      if (d.exact_zero[1]) ratio = 0.0;
      else if (d.exact_one[1] && d.exact_one[0]) ratio = 1.0;
      else ratio = d.coords[1].mid_double() / d.coords[0].mid_double();
      rep.ratios.push_back(ratio);
    }
    std::sort(rep.ratios.begin(), rep.ratios.end());
    rep.ratio_min = rep.ratios.front();
    rep.ratio_max = rep.ratios.back();
    rep.ratio_min_lo = rep.ratio_min_hi = rep.ratio_min;
    rep.ratio_max_lo = rep.ratio_max_hi = rep.ratio_max;
    for (size_t s = 1; s < rep.ratios.size(); ++s)
      rep.max_gap = std::max(rep.max_gap, rep.ratios[s] - rep.ratios[s - 1]);
  } else {
    std::vector<std::vector<double>> pts;
    for (const auto& d : cloud) {
      std::vector<double> m(r);
      for (int k = 0; k < r; ++k) m[k] = d.coords[k].mid_double();
      pts.push_back(std::move(m));
    }
    rep.hull_dimension = affine_dimension(pts);
  }
  return rep;
}

// ---- Schmutz parabolic family ------------------------------------------------

namespace {

void require_hyperbolic_trace(const FieldElement& t, int root, const char* which) {
  FieldElement disc = t * t + Rational(-4);
  if (disc.sign_at(root) <= 0)
    fail(ErrorCode::NotHyperbolic,
         std::string(which) + " trace is not hyperbolic at the identity embedding");
}

}  // namespace

ParabolicFamilyResult parabolic_family(const FieldPtr& field,
                                       const std::vector<int>& embedding_order,
                                       const FieldElement& tr_u, const FieldElement& tr_v,
                                       const std::vector<long>& n_list, long bits) {
  (void)field;
  if (embedding_order.empty()) fail(ErrorCode::BadSpec, "no embeddings");
  int id_root = embedding_order.front();
  require_hyperbolic_trace(tr_u, id_root, "tr_u");
  require_hyperbolic_trace(tr_v, id_root, "tr_v");
  FieldElement A = tr_u + tr_v;
  FieldElement B = tr_u;
  if (A.is_zero()) fail(ErrorCode::BadSpec, "tr_u + tr_v must be nonzero");

  const size_t r = embedding_order.size();
  ParabolicFamilyResult res;
  for (size_t k = 1; k < r; ++k) {
    Interval a1 = A.embed(id_root, bits).abs();
    Interval ak = A.embed(embedding_order[k], bits).abs();
    res.asymptote.push_back(((a1 / ak).log() * Interval::exact_int(2, bits + 16)).mid_double());
  }

  for (long n : n_list) {
    ParabolicFamilyRow row;
    row.n = n;
    row.trace = A * Rational(n) - B;
    FieldElement disc = row.trace * row.trace + Rational(-4);
    for (size_t k = 0; k < r; ++k) {
      if (disc.sign_at(embedding_order[k]) <= 0) {
        row.skipped = true;
        row.elliptic_embeddings.push_back(static_cast<int>(k));
      }
    }
    if (!row.skipped) {
      std::vector<Interval> ells;
      for (size_t k = 0; k < r; ++k)
        ells.push_back(ell_from_trace(row.trace, embedding_order[k], bits));
      for (size_t k = 0; k < r; ++k) row.ell.push_back(ells[k].mid_double());
      for (size_t k = 1; k < r; ++k)
        row.gap_minus_asymptote.push_back((ells[0] - ells[k]).mid_double() -
                                          res.asymptote[k - 1]);
      if (r >= 2) row.ratio = (ells[1] / ells[0]).mid_double();
    }
    res.rows.push_back(std::move(row));
  }
  return res;
}

Interval parabolic_gap_error(const FieldPtr& field, const std::vector<int>& embedding_order,
                             int position, const FieldElement& tr_u,
                             const FieldElement& tr_v, long n, long bits) {
  (void)field;
  if (position < 1 || position >= static_cast<int>(embedding_order.size()))
    fail(ErrorCode::BadIndex, "asymptote position out of range");
  int id_root = embedding_order.front();
  int other = embedding_order[position];
  FieldElement A = tr_u + tr_v;
  FieldElement tn = A * Rational(n) - tr_u;
  Interval l1 = ell_from_trace(tn, id_root, bits);
  Interval li = ell_from_trace(tn, other, bits);
  Interval a1 = A.embed(id_root, bits).abs();
  Interval ai = A.embed(other, bits).abs();
  Interval asym = (a1 / ai).log() * Interval::exact_int(2, bits + 16);
  return ((l1 - li) - asym).abs();
}

}  // namespace limitcone
