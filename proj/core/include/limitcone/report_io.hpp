#pragma once

#include <string>

#include "limitcone/limits.hpp"

namespace limitcone {
namespace io {

// Common sampling context echoed into every report so no number appears
// without the knobs that produced it.
struct RunMeta {
  std::string label;
  long depth = 0;
  long cap = 0;
  long bits = 0;
  long order_bound = 0;
  int grid = 0;
  unsigned long seed = 0;
};

// ---- group spec JSON ---------------------------------------------------

std::string spec_to_json(const GroupSpec& spec);
GroupSpec spec_from_json(const std::string& text);
// builtin name ("hecke:5") or a JSON file path
GroupSpec load_spec(const std::string& source);

// ---- report JSON ---------------------------------------------------------

std::string cone_report_json(const ConeReport& rep, const RunMeta& meta);
std::string zariski_report_json(const ZariskiReport& rep, const RunMeta& meta);
std::string schottky_json(const SchottkyResult& res, const RunMeta& meta,
                          const std::string& g_word, const std::string& h_word,
                          long random_words_checked, bool all_nontrivial);
std::string furstenberg_json(const TorusCloud& cloud, const RunMeta& meta);
std::string torus_orbit_json(const TorusOrbitResult& res, double alpha, double beta,
                             long n, const RunMeta& meta);
std::string enumeration_json(const EnumerationResult& e, const RunMeta& meta);
std::string mixed_witness_json(const MixedWitnessResult& res, const RunMeta& meta);
std::string error_json(const std::string& code, const std::string& message);

// ---- CSV -------------------------------------------------------------------

// word, tag, per-factor trace, per-factor ell, direction coords; the
// enumeration, when given, avoids re-evaluating words
std::string direction_cloud_csv(const GroupSpec& spec, const DirectionCloud& cloud,
                                const EnumerationResult* enumeration = nullptr);
// word, angle_1..angle_r
std::string torus_cloud_csv(const TorusCloud& cloud);
// n, skipped, trace, ell_i, ratio, gap-vs-asymptote
std::string parabolic_family_csv(const ParabolicFamilyResult& res);
// checkpoint discrepancies
std::string torus_orbit_csv(const TorusOrbitResult& res, double alpha, double beta);

void write_file(const std::string& path, const std::string& content);

}  // namespace io

// deterministic static SVG (fixed viewport, no timestamps)
namespace svg {

std::string torus_scatter(const TorusCloud& cloud);
std::string ratio_histogram(const ConeReport& rep);

}  // namespace svg
}  // namespace limitcone
