#include "limitcone/report_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "limitcone/errors.hpp"

namespace limitcone {
namespace io {

using ojson = nlohmann::ordered_json;

namespace {

ojson meta_json(const RunMeta& m) {
  ojson j;
  j["label"] = m.label;
  j["depth"] = m.depth;
  j["cap"] = m.cap;
  if (m.bits) j["bits"] = m.bits;
  if (m.order_bound) j["order_bound"] = m.order_bound;
  if (m.grid) j["grid"] = m.grid;
  if (m.seed) j["seed"] = m.seed;
  return j;
}

ojson field_element_json(const FieldElement& e) {
  ojson a = ojson::array();
  for (const auto& c : e.coords()) a.push_back(rational_str(c));
  return a;
}

std::vector<Rational> coords_from_json(const ojson& arr) {
  std::vector<Rational> coords;
  for (const auto& c : arr) coords.push_back(parse_rational(c.get<std::string>()));
  return coords;
}

std::string fmt(double v) { return format_double(v, 12); }

}  // namespace

std::string spec_to_json(const GroupSpec& spec) {
  ojson j;
  j["schema"] = "1";
  j["label"] = spec.label;
  ojson minpoly = ojson::array();
  for (const auto& c : spec.field->minpoly()) minpoly.push_back(rational_str(c));
  j["field"]["minpoly"] = minpoly;
  ojson gens;
  for (const auto& g : spec.generators) {
    gens[g.name] = ojson::array(
        {ojson::array({field_element_json(g.mat.a()), field_element_json(g.mat.b())}),
         ojson::array({field_element_json(g.mat.c()), field_element_json(g.mat.d())})});
  }
  j["generators"] = gens;
  j["embeddings"] = spec.embedding_order;
  if (spec.diagonal_by_construction) j["diagonal"] = true;
  return j.dump(2) + "\n";
}

GroupSpec spec_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& ex) {
    fail(ErrorCode::BadSpec, std::string("spec JSON parse error: ") + ex.what());
  }
  GroupSpec spec;
  try {
    std::vector<Rational> mp;
    for (const auto& c : j.at("field").at("minpoly"))
      mp.push_back(parse_rational(c.get<std::string>()));
    spec.field = NumberField::create(poly::make(std::move(mp)));
    spec.label = j.value("label", std::string("user"));
    spec.diagonal_by_construction = j.value("diagonal", false);
    spec.provenance = SpecProvenance::User;
    if (j.contains("embeddings")) {
      for (const auto& v : j.at("embeddings"))
        spec.embedding_order.push_back(v.get<int>());
      if (spec.embedding_order.empty())
        fail(ErrorCode::BadSpec, "embeddings list is empty");
      for (int idx : spec.embedding_order)
        if (idx < 1 || idx > spec.field->degree())
          fail(ErrorCode::BadSpec, "embedding index out of range");
      for (size_t a = 0; a < spec.embedding_order.size(); ++a)
        for (size_t b = a + 1; b < spec.embedding_order.size(); ++b)
          if (spec.embedding_order[a] == spec.embedding_order[b])
            fail(ErrorCode::BadSpec, "embedding indices must be distinct");
    }
    int phi1 = spec.embedding_order.empty() ? 1 : spec.embedding_order.front();
    for (auto it = j.at("generators").begin(); it != j.at("generators").end(); ++it) {
      const ojson& m = it.value();
      if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
        fail(ErrorCode::BadSpec, "generator matrices are 2x2 arrays");
      FieldElement a(spec.field, coords_from_json(m[0][0]));
      FieldElement b(spec.field, coords_from_json(m[0][1]));
      FieldElement c(spec.field, coords_from_json(m[1][0]));
      FieldElement d(spec.field, coords_from_json(m[1][1]));
      spec.generators.push_back({it.key(), MoebiusElement(a, b, c, d, phi1)});
    }
    if (spec.generators.empty()) fail(ErrorCode::BadSpec, "no generators");
    if (spec.embedding_order.empty()) {
      // default r: identity embedding 1 plus the unbounded embeddings
      GroupSpec provisional = spec;
      provisional.embedding_order = {1};
      std::vector<bool> unbounded = detect_unbounded(provisional, 10, 30000);
      spec.embedding_order.push_back(1);
      for (int i = 2; i <= spec.field->degree(); ++i)
        if (unbounded[i - 1]) spec.embedding_order.push_back(i);
    }
  } catch (const ojson::exception& ex) {
    fail(ErrorCode::BadSpec, std::string("spec JSON structure: ") + ex.what());
  }
  return spec;
}

GroupSpec load_spec(const std::string& source) {
  if (source.find(':') != std::string::npos) return builtin_group(source);
  std::ifstream in(source);
  if (!in) fail(ErrorCode::IoError, "cannot open spec file: " + source);
  std::stringstream buf;
  buf << in.rdbuf();
  return spec_from_json(buf.str());
}

std::string cone_report_json(const ConeReport& rep, const RunMeta& meta) {
  ojson j;
  j["schema"] = "1";
  j["report"] = "cone";
  j["meta"] = meta_json(meta);
  j["r"] = rep.r;
  j["truncated"] = rep.truncated;
  j["samples"] = {{"total", rep.samples_total},
                  {"hyperbolic", rep.samples_hyperbolic},
                  {"mixed", rep.samples_mixed}};
  j["halfspace"] = rep.halfspace_holds;
  if (rep.r == 2) {
    j["ratio_min"] = fmt(rep.ratio_min);
    j["ratio_max"] = fmt(rep.ratio_max);
    j["ratio_min_bounds"] = {fmt(rep.ratio_min_lo), fmt(rep.ratio_min_hi)};
    j["ratio_max_bounds"] = {fmt(rep.ratio_max_lo), fmt(rep.ratio_max_hi)};
    j["max_gap"] = fmt(rep.max_gap);
    if (rep.skipped_infinite_ratio)
      j["skipped_infinite_ratio"] = rep.skipped_infinite_ratio;
  } else {
    j["hull_dimension"] = rep.hull_dimension;
  }
  return j.dump(2) + "\n";
}

std::string zariski_report_json(const ZariskiReport& rep, const RunMeta& meta) {
  ojson j;
  j["schema"] = "1";
  j["report"] = "zariski";
  j["meta"] = meta_json(meta);
  j["r"] = rep.r;
  j["verdict"] = zariski_verdict_name(rep.verdict);
  // a witness is a proof; absence of one is depth-limited evidence
  j["depth_limited"] = rep.depth_limited;
  ojson w = ojson::array();
  for (const auto& wit : rep.witnesses) {
    ojson e;
    e["embedding"] = wit.root_index;
    e["trace"] = field_element_json(wit.trace);
    e["trace_str"] = wit.trace.str();
    w.push_back(e);
  }
  j["witnesses"] = w;
  if (!rep.fixing_embeddings.empty()) j["fixing_embeddings"] = rep.fixing_embeddings;
  return j.dump(2) + "\n";
}

std::string schottky_json(const SchottkyResult& res, const RunMeta& meta,
                          const std::string& g_word, const std::string& h_word,
                          long random_words_checked, bool all_nontrivial) {
  ojson j;
  j["schema"] = "1";
  j["report"] = "schottky";
  j["meta"] = meta_json(meta);
  j["g"] = g_word;
  j["h"] = h_word;
  j["status"] = res.found ? "Found" : "NotFound";
  j["max_power"] = res.max_power_tried;
  if (res.found) {
    j["n"] = res.cert.n;
    j["verified"] = res.cert.verified;
    ojson arcs = ojson::array();
    const char* names[4] = {"g_plus", "g_minus", "h_plus", "h_minus"};
    for (int k = 0; k < 4; ++k) {
      ojson a;
      a["name"] = names[k];
      a["center"] = rational_str(res.cert.arcs[k].center);
      a["radius"] = rational_str(res.cert.arcs[k].radius);
      arcs.push_back(a);
    }
    j["intervals"] = arcs;
  }
  if (random_words_checked > 0) {
    j["random_words"] = {{"checked", random_words_checked},
                         {"all_nontrivial", all_nontrivial}};
  }
  return j.dump(2) + "\n";
}

std::string furstenberg_json(const TorusCloud& cloud, const RunMeta& meta) {
  ojson j;
  j["schema"] = "1";
  j["report"] = "furstenberg";
  j["meta"] = meta_json(meta);
  j["r"] = cloud.r;
  j["points"] = cloud.size();
  j["truncated"] = cloud.truncated;
  j["statistic"] = fmt(cloud.statistic);
  j["statistic_kind"] = "side-normalized max empty box";
  return j.dump(2) + "\n";
}

std::string torus_orbit_json(const TorusOrbitResult& res, double alpha, double beta,
                             long n, const RunMeta& meta) {
  ojson j;
  j["schema"] = "1";
  j["report"] = "torus-orbit";
  j["meta"] = meta_json(meta);
  j["alpha"] = fmt(alpha);
  j["beta"] = fmt(beta);
  j["n"] = n;
  j["discrepancy"] = fmt(res.discrepancy);
  j["statistic"] = fmt(res.cloud.statistic);
  ojson c = ojson::array();
  for (const auto& [k, d] : res.checkpoints)
    c.push_back(ojson::array({k, fmt(d)}));
  j["checkpoints"] = c;
  return j.dump(2) + "\n";
}

std::string enumeration_json(const EnumerationResult& e, const RunMeta& meta) {
  ojson j;
  j["schema"] = "1";
  j["report"] = "enumerate";
  j["meta"] = meta_json(meta);
  j["elements"] = e.elements.size();
  j["cap_exceeded"] = e.cap_exceeded;
  j["count_per_depth"] = e.count_per_depth;
  return j.dump(2) + "\n";
}

std::string mixed_witness_json(const MixedWitnessResult& res, const RunMeta& meta) {
  ojson j;
  j["schema"] = "1";
  j["report"] = "mixed-witness";
  j["meta"] = meta_json(meta);
  j["status"] = res.found ? "Found" : "NotFound";
  j["budget"] = res.budget;
  j["predictions_used"] = res.predictions_used;
  j["exact_checks"] = res.exact_checks;
  if (res.found) j["word"] = res.word;
  return j.dump(2) + "\n";
}

std::string error_json(const std::string& code, const std::string& message) {
  ojson j;
  j["schema"] = "1";
  j["error"]["code"] = code;
  j["error"]["message"] = message;
  return j.dump(2) + "\n";
}

std::string direction_cloud_csv(const GroupSpec& spec, const DirectionCloud& cloud,
                                const EnumerationResult* enumeration) {
  const int r = spec.r();
  std::ostringstream os;
  os << "word,tag";
  for (int k = 1; k <= r; ++k) os << ",trace_" << k;
  for (int k = 1; k <= r; ++k) os << ",ell_" << k;
  for (int k = 1; k <= r; ++k) os << ",dir_" << k;
  os << "\n";
  for (const auto& d : cloud.samples) {
    MoebiusElement g = enumeration && d.source_index < enumeration->elements.size()
                           ? enumeration->elements[d.source_index]
                           : evaluate_word(spec, d.word);
    FieldElement t = g.trace();
    os << d.word << "," << (d.mixed ? "mixed" : "hyperbolic");
    for (int k = 0; k < r; ++k)
      os << "," << fmt(t.embed(spec.embedding_order[k], 48).mid_double());
    for (int k = 0; k < r; ++k) {
      TranslationLength tl = translation_length(g, spec.embedding_order[k], 48);
      os << "," << (tl.exact_zero ? std::string("0") : fmt(tl.value.mid_double()));
    }
    for (int k = 0; k < r; ++k) {
      if (d.exact_zero[k]) os << ",0";
      else if (d.exact_one[k]) os << ",1";
      else os << "," << fmt(d.coords[k].mid_double());
    }
    os << "\n";
  }
  return os.str();
}

std::string torus_cloud_csv(const TorusCloud& cloud) {
  std::ostringstream os;
  os << "word";
  for (int k = 1; k <= cloud.r; ++k) os << ",angle_" << k;
  os << "\n";
  for (size_t i = 0; i < cloud.size(); ++i) {
    os << (i < cloud.words.size() ? cloud.words[i] : std::string());
    for (int k = 0; k < cloud.r; ++k) os << "," << fmt(cloud.points[i * cloud.r + k]);
    os << "\n";
  }
  return os.str();
}

std::string parabolic_family_csv(const ParabolicFamilyResult& res) {
  std::ostringstream os;
  size_t r = res.asymptote.size() + 1;
  os << "n,status,trace";
  for (size_t k = 1; k <= r; ++k) os << ",ell_" << k;
  os << ",ratio";
  for (size_t k = 2; k <= r; ++k) os << ",gap_minus_asymptote_" << k;
  os << "\n";
  for (const auto& row : res.rows) {
    os << row.n << "," << (row.skipped ? "elliptic-skip" : "ok") << ","
       << row.trace.str();
    for (size_t k = 0; k < r; ++k)
      os << "," << (row.skipped ? std::string() : fmt(row.ell[k]));
    os << "," << (row.skipped ? std::string() : fmt(row.ratio));
    for (size_t k = 1; k < r; ++k)
      os << "," << (row.skipped ? std::string() : fmt(row.gap_minus_asymptote[k - 1]));
    os << "\n";
  }
  return os.str();
}

std::string torus_orbit_csv(const TorusOrbitResult& res, double alpha, double beta) {
  std::ostringstream os;
  os << "alpha,beta,n,discrepancy\n";
  for (const auto& [k, d] : res.checkpoints)
    os << fmt(alpha) << "," << fmt(beta) << "," << k << "," << fmt(d) << "\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorCode::IoError, "short write to " + path);
}

}  // namespace io
}  // namespace limitcone
