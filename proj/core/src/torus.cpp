#include <algorithm>
#include <cmath>

#include "limitcone/errors.hpp"
#include "limitcone/limits.hpp"

namespace limitcone {

namespace {

// largest-area rectangle of empty cells on a g x g torus grid (wraparound in
// both axes, side lengths capped at g); returns the area in cells
long max_empty_torus_box(const std::vector<char>& occupied, int g) {
  long best = 0;
  std::vector<char> avail(g);
  for (int s = 0; s < g; ++s) {
    std::fill(avail.begin(), avail.end(), 1);
    for (int h = 1; h <= g; ++h) {
      const int row = (s + h - 1) % g;
      bool any = false;
      for (int c2 = 0; c2 < g; ++c2) {
        avail[c2] = avail[c2] && !occupied[row * g + c2];
        any |= avail[c2];
      }
      if (!any) break;
      // longest circular run of available columns, capped at g
      int run = 0, cur = 0, lead = 0;
      bool leading = true;
      for (int c2 = 0; c2 < g; ++c2) {
        if (avail[c2]) {
          ++cur;
        } else {
          if (leading) lead = cur;
          leading = false;
          run = std::max(run, cur);
          cur = 0;
        }
      }
      if (leading) run = g;  // whole circle available
      else run = std::max(run, cur + lead);
      run = std::min(run, g);
      best = std::max(best, static_cast<long>(h) * run);
    }
  }
  return best;
}

double pair_statistic(const std::vector<double>& xs, const std::vector<double>& ys,
                      int g) {
  std::vector<char> occupied(static_cast<size_t>(g) * g, 0);
  for (size_t i = 0; i < xs.size(); ++i) {
    int cx = std::min(g - 1, static_cast<int>(std::floor(xs[i] * g)));
    int cy = std::min(g - 1, static_cast<int>(std::floor(ys[i] * g)));
    occupied[static_cast<size_t>(cx) * g + cy] = 1;
  }
  long area = max_empty_torus_box(occupied, g);
  return std::sqrt(static_cast<double>(area) / (static_cast<double>(g) * g));
}

}  // namespace

double torus_statistic(const TorusCloud& cloud) {
  if (cloud.r < 2 || cloud.size() == 0) return 1.0;
  const size_t n = cloud.size();
  double best = 0.0;
  for (int i = 0; i < cloud.r; ++i)
    for (int j = i + 1; j < cloud.r; ++j) {
      std::vector<double> xs(n), ys(n);
      for (size_t s = 0; s < n; ++s) {
        xs[s] = cloud.points[s * cloud.r + i];
        ys[s] = cloud.points[s * cloud.r + j];
      }
      best = std::max(best, pair_statistic(xs, ys, cloud.grid));
    }
  return best;
}

TorusCloud furstenberg_cloud(const GroupSpec& spec, long depth, long cap, long bits,
                             int grid) {
  if (spec.r() < 2) fail(ErrorCode::DegreeOne, "furstenberg clouds need r >= 2");
  EnumerationResult e = enumerate_group(spec, depth, cap);
  std::vector<Letter> letters = letters_of(spec);
  TorusCloud cloud;
  cloud.r = spec.r();
  cloud.grid = grid;
  cloud.depth = depth;
  cloud.cap = cap;
  cloud.truncated = e.cap_exceeded;
  for (size_t i = 1; i < e.elements.size(); ++i) {
    std::vector<ElementClass> classes = classify_tuple(e.elements[i], spec.embedding_order);
    bool all_hyp = std::all_of(classes.begin(), classes.end(), [](const ElementClass& c) {
      return c.kind == ClassKind::Hyperbolic;
    });
    if (!all_hyp) continue;
    for (int k = 0; k < spec.r(); ++k) {
      auto [att, rep] =
          fixed_points_projective(e.elements[i], spec.embedding_order[k], bits);
      (void)rep;
      Interval angle = chart::angle_of_point(att.u, att.v);
      cloud.points.push_back(chart::fold(angle.mid_double()));
    }
    cloud.words.push_back(e.word_of(i, letters));
  }
  cloud.statistic = torus_statistic(cloud);
  return cloud;
}

Interval rotation_number(const FieldElement& trace, int root_index, long bits) {
  FieldElement disc = trace * trace + Rational(-4);
  if (disc.sign_at(root_index) >= 0)
    fail(ErrorCode::BadSpec, "rotation numbers need an elliptic trace");
  Interval t = trace.embed(root_index, bits);
  mpfr_prec_t prec = t.prec();
  Interval theta = (t / Interval::exact_int(2, prec)).acos();
  return theta / (Interval::pi(prec) * Interval::exact_int(2, prec));
}

double star_discrepancy(const std::vector<double>& points_xy, int grid) {
  const int g = grid;
  const size_t n = points_xy.size() / 2;
  std::vector<long> cells(static_cast<size_t>(g) * g, 0);
  for (size_t i = 0; i < n; ++i) {
    int cx = std::min(g - 1, static_cast<int>(std::floor(points_xy[2 * i] * g)));
    int cy = std::min(g - 1, static_cast<int>(std::floor(points_xy[2 * i + 1] * g)));
    ++cells[static_cast<size_t>(cx) * g + cy];
  }
  // prefix counts: pref[i][j] = #points in [0, i/g) x [0, j/g)
  std::vector<long> pref((g + 1) * (g + 1), 0);
  for (int i = 1; i <= g; ++i)
    for (int j = 1; j <= g; ++j)
      pref[i * (g + 1) + j] = cells[(i - 1) * g + (j - 1)] + pref[(i - 1) * (g + 1) + j] +
                              pref[i * (g + 1) + (j - 1)] - pref[(i - 1) * (g + 1) + (j - 1)];
  double worst = 0.0;
  for (int i = 1; i <= g; ++i)
    for (int j = 1; j <= g; ++j) {
      double frac = static_cast<double>(pref[i * (g + 1) + j]) / static_cast<double>(n);
      double area = (static_cast<double>(i) / g) * (static_cast<double>(j) / g);
      worst = std::max(worst, std::fabs(frac - area));
    }
  return worst;
}

TorusOrbitResult torus_orbit(const Interval& alpha, const Interval& beta, long N,
                             int grid) {
  if (N < 1) fail(ErrorCode::BadSpec, "torus orbit needs N >= 1");
  TorusOrbitResult res;
  res.cloud.r = 2;
  res.cloud.grid = grid;
  const double a = alpha.mid_double();
  const double b = beta.mid_double();
  res.cloud.points.reserve(2 * N);
  double xa = 0.0, xb = 0.0;
  std::vector<long> marks;
  for (long m = 10; m < N; m *= 10) marks.push_back(m);
  size_t mark_at = 0;
  for (long k = 1; k <= N; ++k) {
    xa += a;
    xa -= std::floor(xa);
    xb += b;
    xb -= std::floor(xb);
    res.cloud.points.push_back(xa);
    res.cloud.points.push_back(xb);
    if (mark_at < marks.size() && k == marks[mark_at]) {
      res.checkpoints.push_back({k, star_discrepancy(res.cloud.points, grid)});
      ++mark_at;
    }
  }
  res.discrepancy = star_discrepancy(res.cloud.points, grid);
  res.checkpoints.push_back({N, res.discrepancy});
  res.cloud.statistic = torus_statistic(res.cloud);
  return res;
}

}  // namespace limitcone
