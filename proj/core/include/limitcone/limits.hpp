#pragma once

#include <string>
#include <vector>

#include "limitcone/groups.hpp"

namespace limitcone {

// ---- translation-direction clouds and the limit cone -----------------------

struct DirectionCloud {
  std::vector<Direction> samples;  // Direction.mixed tags limit-cone points
  long depth = 0, cap = 0, bits = 0;
  bool truncated = false;
};

// L(g) for every enumerated element with at least one hyperbolic factor;
// mixed samples (a zero coordinate) are limit-cone points, not P_Gamma.
DirectionCloud direction_cloud(const GroupSpec& spec, long depth, long cap, long bits);
DirectionCloud direction_cloud(const GroupSpec& spec, const EnumerationResult& e,
                               long bits);

struct ConeReport {
  int r = 0;
  long depth = 0, cap = 0, bits = 0;
  bool truncated = false;
  long samples_total = 0;       // elements contributing a direction
  long samples_hyperbolic = 0;  // all-hyperbolic tuples (P_Gamma samples)
  long samples_mixed = 0;       // mixed tuples (cone points)
  bool halfspace_holds = true;  // x_1 >= x_i for every sample, exact comparisons

  // r == 2 data; ratio = l_2 / l_1
  std::vector<double> ratios;  // sorted midpoints, one per sample
  double ratio_min = 0, ratio_max = 0, max_gap = 0;
  // certified enclosures of the extreme sampled ratios
  double ratio_min_lo = 0, ratio_min_hi = 0;
  double ratio_max_lo = 0, ratio_max_hi = 0;
  long skipped_infinite_ratio = 0;  // l_1 = 0 < l_i samples (never for halfspace groups)

  // r >= 3 diagnostics
  int hull_dimension = 0;  // affine dimension spanned by the samples
};

// One enumeration, one report per requested depth (ascending). Ratio sets at
// smaller depths are prefixes by word length, so refinement diagnostics
// (interval nesting, gap shrinkage) come from a single run.
std::vector<ConeReport> cone_analysis(const GroupSpec& spec,
                                      const std::vector<long>& depths, long cap,
                                      long bits);
std::vector<ConeReport> cone_analysis(const GroupSpec& spec, const EnumerationResult& e,
                                      const std::vector<long>& depths, long bits);
ConeReport cone_report(const GroupSpec& spec, long depth, long cap, long bits);

// Convex-hull style summary of an explicit direction list.
ConeReport cone_hull(const std::vector<Direction>& cloud);

// ---- Schmutz parabolic trace family ----------------------------------------

struct ParabolicFamilyRow {
  long n = 0;
  FieldElement trace;  // exact n*A - B
  bool skipped = false;
  std::vector<int> elliptic_embeddings;    // positions still elliptic (skipped rows)
  std::vector<double> ell;                 // per-position translation length
  std::vector<double> gap_minus_asymptote; // (l_1 - l_i) - 2 ln|phi_1(A)/phi_i(A)|
  double ratio = 0;                        // l_2 / l_1 when r >= 2
};

struct ParabolicFamilyResult {
  std::vector<ParabolicFamilyRow> rows;
  std::vector<double> asymptote;  // per position i >= 2
};

ParabolicFamilyResult parabolic_family(const FieldPtr& field,
                                       const std::vector<int>& embedding_order,
                                       const FieldElement& tr_u, const FieldElement& tr_v,
                                       const std::vector<long>& n_list, long bits);

// Certified |(l_1 - l_i)(n) - asymptote| as an interval (acceptance-grade).
Interval parabolic_gap_error(const FieldPtr& field, const std::vector<int>& embedding_order,
                             int position, const FieldElement& tr_u,
                             const FieldElement& tr_v, long n, long bits);

// ---- Furstenberg torus clouds ----------------------------------------------

struct TorusCloud {
  int r = 0;
  int grid = 64;
  std::vector<double> points;  // folded angles, r per sample
  std::vector<std::string> words;
  double statistic = 1.0;  // side-normalized max empty box (sqrt of max area)
  long depth = 0, cap = 0;
  bool truncated = false;

  size_t size() const { return r ? points.size() / r : 0; }
};

// Attractive-fixed-point tuples of all-hyperbolic isometries, in the circle
// chart.
TorusCloud furstenberg_cloud(const GroupSpec& spec, long depth, long cap, long bits,
                             int grid);

// Max-empty-box statistic on a g x g torus grid (wraparound in both axes),
// side-normalized: sqrt(max empty area). Pairs beyond the first two
// coordinates are scanned and the maximum over coordinate pairs is returned.
double torus_statistic(const TorusCloud& cloud);

// Rotation number of an elliptic element from its trace at one embedding:
// arccos(phi_i(tr)/2) / (2 pi).
Interval rotation_number(const FieldElement& trace, int root_index, long bits);

struct TorusOrbitResult {
  TorusCloud cloud;  // {(n*alpha mod 1, n*beta mod 1)}
  double discrepancy = 0;  // grid-corner star discrepancy
  std::vector<std::pair<long, double>> checkpoints;  // (N', discrepancy at N')
};

TorusOrbitResult torus_orbit(const Interval& alpha, const Interval& beta, long N,
                             int grid);

// Star discrepancy over grid-corner boxes [0,i/g) x [0,j/g).
double star_discrepancy(const std::vector<double>& points_xy, int grid);

// ---- Zariski density criterion ----------------------------------------------

enum class ZariskiVerdict { Dense, NotDense, Inconclusive };
const char* zariski_verdict_name(ZariskiVerdict v);

struct ZariskiWitness {
  int root_index;       // the embedding the witness separates from the identity
  FieldElement trace;   // sampled invariant trace with phi_i(t) != t
};

struct ZariskiReport {
  ZariskiVerdict verdict = ZariskiVerdict::Inconclusive;
  std::vector<ZariskiWitness> witnesses;
  std::vector<int> fixing_embeddings;  // zero-witness embeddings (NotDense)
  long depth = 0, cap = 0;
  int r = 0;
  bool depth_limited = false;  // NotDense is evidence only, unless diagonal
};

ZariskiReport zariski_check(const GroupSpec& spec, long depth, long cap);

// ---- mixed-witness upgrade search (reflection lemma machinery) ---------------

enum class SlotTarget { Hyp, EllInf };

struct MixedWitnessResult {
  bool found = false;
  MoebiusElement element;
  std::string word;
  long budget = 0;
  long predictions_used = 0;
  long exact_checks = 0;
};

MixedWitnessResult find_mixed_witness(const GroupSpec& spec,
                                      const std::vector<SlotTarget>& pattern,
                                      long depth, long cap, long budget,
                                      long order_bound = 200);

}  // namespace limitcone
