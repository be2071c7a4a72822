#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "limitcone/errors.hpp"
#include "limitcone/report_io.hpp"

using namespace limitcone;

namespace {

struct CommonOpts {
  std::string spec_name;
  std::string spec_file;
  long depth = 10;
  long cap = 100000;
  long bits = 96;
  long order_bound = 200;
  int grid = 64;
  unsigned long seed = 1;
  int threads = 0;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_spec = true) {
  if (with_spec)
    cmd->add_option("SPEC", o.spec_name, "builtin (hecke:q, tri-qinfinf:q, pslz-diag:poly) or JSON file");
  cmd->add_option("--spec", o.spec_file, "spec JSON file (alternative to the positional)");
  cmd->add_option("--depth", o.depth, "maximum word length");
  cmd->add_option("--cap", o.cap, "maximum number of enumerated elements");
  cmd->add_option("--bits", o.bits, "certified interval precision (2^-bits)");
  cmd->add_option("--order-bound", o.order_bound, "elliptic torsion search bound");
  cmd->add_option("--grid", o.grid, "torus statistic grid resolution");
  cmd->add_option("--seed", o.seed, "seed for sampled verification passes");
  cmd->add_option("--threads", o.threads, "worker threads (default: LIMITCONE_THREADS or 1)");
  cmd->add_option("--out", o.out, "output path base (writes <out>.json/.csv/.svg)");
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("LIMITCONE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

GroupSpec resolve_spec(const CommonOpts& o) {
  if (!o.spec_file.empty()) return io::load_spec(o.spec_file);
  if (o.spec_name.empty()) fail(ErrorCode::BadFlag, "no group spec given");
  return io::load_spec(o.spec_name);
}

io::RunMeta meta_of(const GroupSpec& spec, const CommonOpts& o) {
  return io::RunMeta{spec.label, o.depth, o.cap, o.bits, o.order_bound, o.grid, o.seed};
}

std::string out_base(const CommonOpts& o, const std::string& command,
                     const std::string& label) {
  if (!o.out.empty()) return o.out;
  std::string clean;
  for (char c : label) clean += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return command + "_" + clean;
}

void emit(const std::string& base, const std::string& ext, const std::string& content) {
  io::write_file(base + ext, content);
}

// ---- subcommand bodies -------------------------------------------------

int run_group(const CommonOpts& o) {
  GroupSpec spec = resolve_spec(o);
  std::cout << "label: " << spec.label << "\n";
  std::cout << "field: " << poly::str(spec.field->minpoly()) << " (degree "
            << spec.field->degree() << ")\n";
  for (int i = 1; i <= spec.field->degree(); ++i) {
    Interval root(spec.field->root_interval(i, Rational(1, 1L << 40)), 64);
    std::cout << "  root " << i << " ~ " << format_double(root.mid_double(), 12) << "\n";
  }
  std::cout << "embeddings (identity first):";
  for (int idx : spec.embedding_order) std::cout << " " << idx;
  std::cout << "  (r = " << spec.r() << ")\n";
  for (const auto& g : spec.generators)
    std::cout << "generator " << g.name << " = " << g.mat.str() << "\n";
  GroupValidation v = validate_group(spec, std::min(o.depth, 6L), std::min(o.cap, 4000L),
                                     o.order_bound);
  for (const auto& note : v.notes) std::cout << "  - " << note << "\n";
  std::cout << "validation: " << (v.ok ? "ok" : "FAILED") << "\n";
  return v.ok ? 0 : 1;
}

int run_enumerate(const CommonOpts& o) {
  GroupSpec spec = resolve_spec(o);
  EnumerationResult e = enumerate_group(spec, o.depth, o.cap, resolve_threads(o.threads));
  std::string j = io::enumeration_json(e, meta_of(spec, o));
  std::cout << j;
  if (!o.out.empty()) emit(o.out, ".json", j);
  return 0;
}

int run_cone(const CommonOpts& o) {
  GroupSpec spec = resolve_spec(o);
  EnumerationResult e = enumerate_group(spec, o.depth, o.cap, resolve_threads(o.threads));
  ConeReport rep = cone_analysis(spec, e, {o.depth}, o.bits).front();
  std::string base = out_base(o, "cone", spec.label);
  std::string j = io::cone_report_json(rep, meta_of(spec, o));
  emit(base, ".json", j);
  if (rep.r == 2 && !rep.ratios.empty()) emit(base, ".svg", svg::ratio_histogram(rep));
  DirectionCloud cloud = direction_cloud(spec, e, o.bits);
  emit(base, ".csv", io::direction_cloud_csv(spec, cloud, &e));
  std::cout << j;
  return 0;
}

int run_furstenberg(const CommonOpts& o) {
  GroupSpec spec = resolve_spec(o);
  TorusCloud cloud = furstenberg_cloud(spec, o.depth, o.cap, o.bits, o.grid);
  std::string base = out_base(o, "furstenberg", spec.label);
  std::string j = io::furstenberg_json(cloud, meta_of(spec, o));
  emit(base, ".json", j);
  emit(base, ".csv", io::torus_cloud_csv(cloud));
  if (cloud.size() > 0) emit(base, ".svg", svg::torus_scatter(cloud));
  std::cout << j;
  return 0;
}

int run_zariski(const CommonOpts& o) {
  GroupSpec spec = resolve_spec(o);
  ZariskiReport rep = zariski_check(spec, o.depth, o.cap);
  std::string j = io::zariski_report_json(rep, meta_of(spec, o));
  if (!o.out.empty()) emit(o.out, ".json", j);
  std::cout << j;
  return 0;
}

int run_parabolic(const CommonOpts& o, const std::string& word_u,
                  const std::string& word_v, const std::string& n_list) {
  GroupSpec spec = resolve_spec(o);
  FieldElement tr_u = evaluate_word(spec, word_u).trace();
  FieldElement tr_v = evaluate_word(spec, word_v).trace();
  std::vector<long> ns;
  std::stringstream ss(n_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) ns.push_back(std::stol(tok));
  if (ns.empty()) fail(ErrorCode::BadFlag, "empty n list");
  ParabolicFamilyResult res =
      parabolic_family(spec.field, spec.embedding_order, tr_u, tr_v, ns, o.bits);
  std::string base = out_base(o, "parabolic", spec.label);
  emit(base, ".csv", io::parabolic_family_csv(res));
  std::ostringstream sum;
  sum << "wrote " << base << ".csv (" << res.rows.size() << " rows; asymptote";
  for (double a : res.asymptote) sum << " " << format_double(a, 12);
  sum << ")\n";
  std::cout << sum.str();
  return 0;
}

int run_schottky(const CommonOpts& o, const std::string& word_g,
                 const std::string& word_h, long max_power, long check_words) {
  GroupSpec spec = resolve_spec(o);
  MoebiusElement g = evaluate_word(spec, word_g);
  MoebiusElement h = evaluate_word(spec, word_h);
  SchottkyResult res = schottky_powers(g, h, spec.identity_root(), max_power, o.bits);
  long checked = 0;
  bool all_nontrivial = true;
  if (res.found && check_words > 0) {
    MoebiusElement a = g.pow(res.cert.n), b = h.pow(res.cert.n);
    MoebiusElement gens[4] = {a, a.inverse(), b, b.inverse()};
    std::mt19937_64 rng(o.seed);
    for (long iter = 0; iter < check_words; ++iter) {
      int len = 1 + static_cast<int>(rng() % 10);
      MoebiusElement w = MoebiusElement::identity(spec.field, spec.identity_root());
      int prev = -1;
      for (int k = 0; k < len; ++k) {
        int pick;
        do {
          pick = static_cast<int>(rng() % 4);
        } while (prev >= 0 && (pick ^ 1) == prev);
        w = w * gens[pick];
        prev = pick;
      }
      ++checked;
      if (w.is_identity()) all_nontrivial = false;
    }
  }
  std::string j = io::schottky_json(res, meta_of(spec, o), word_g, word_h, checked,
                                    all_nontrivial);
  std::string base = out_base(o, "schottky", spec.label);
  emit(base, ".json", j);
  std::cout << j;
  return 0;
}

int run_torus_orbit(const CommonOpts& o, double alpha_flag, double beta_flag,
                    const std::string& word_a, const std::string& word_b, int position,
                    long n) {
  Interval alpha(0.0, 96), beta(0.0, 96);
  double alpha_val = alpha_flag, beta_val = beta_flag;
  if (!word_a.empty()) {
    GroupSpec spec = resolve_spec(o);
    if (position < 1 || position >= spec.r())
      fail(ErrorCode::BadFlag, "--embedding must name a non-identity tuple position");
    int root = spec.embedding_order[position];
    alpha = rotation_number(evaluate_word(spec, word_a).trace(), root, o.bits);
    beta = rotation_number(evaluate_word(spec, word_b).trace(), root, o.bits);
    alpha_val = alpha.mid_double();
    beta_val = beta.mid_double();
  } else {
    alpha = Interval(alpha_flag, 96);
    beta = Interval(beta_flag, 96);
  }
  TorusOrbitResult res = torus_orbit(alpha, beta, n, o.grid);
  CommonOpts oo = o;
  std::string base = out_base(oo, "torus_orbit", "run");
  io::RunMeta meta{"torus-orbit", 0, 0, o.bits, 0, o.grid, o.seed};
  std::string j = io::torus_orbit_json(res, alpha_val, beta_val, n, meta);
  emit(base, ".csv", io::torus_orbit_csv(res, alpha_val, beta_val));
  emit(base, ".json", j);
  std::cout << j;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limitcone: exact Galois-conjugate isometry tuples and their limit sets"};
  app.require_subcommand(1);

  CommonOpts o_group, o_enum, o_cone, o_fur, o_zar, o_par, o_sch, o_orb;

  CLI::App* c_group = app.add_subcommand("group", "validate a group spec and print relations");
  add_common(c_group, o_group);

  CLI::App* c_enum = app.add_subcommand("enumerate", "reduced-word BFS element counts");
  add_common(c_enum, o_enum);

  CLI::App* c_cone = app.add_subcommand("cone", "translation-direction cloud and cone report");
  add_common(c_cone, o_cone);

  CLI::App* c_fur = app.add_subcommand("furstenberg", "attractive fixed-point torus cloud");
  add_common(c_fur, o_fur);

  CLI::App* c_zar = app.add_subcommand("zariski", "trace-field Zariski density criterion");
  add_common(c_zar, o_zar);

  CLI::App* c_par = app.add_subcommand("parabolic-family", "Schmutz trace family diagnostics");
  add_common(c_par, o_par);
  std::string word_u = "T^4*S", word_v = "T^4*S";
  std::string n_list = "1000,10000,100000,1000000";
  c_par->add_option("--u", word_u, "word whose trace is tr(T_u)");
  c_par->add_option("--v", word_v, "word whose trace is tr(T_v)");
  c_par->add_option("--n-list", n_list, "comma-separated multipliers");

  CLI::App* c_sch = app.add_subcommand("schottky", "ping-pong certificate search");
  add_common(c_sch, o_sch);
  std::string word_g = "T^4*S", word_h = "S*T^4*S*S";
  long max_power = 20, check_words = 10000;
  c_sch->add_option("--word-g", word_g, "first hyperbolic word");
  c_sch->add_option("--word-h", word_h, "second hyperbolic word");
  c_sch->add_option("--max-power", max_power, "largest power to try");
  c_sch->add_option("--check-words", check_words, "random reduced words to verify");

  CLI::App* c_orb = app.add_subcommand("torus-orbit", "rotation orbit discrepancy on the 2-torus");
  add_common(c_orb, o_orb);
  double alpha = 0.0, beta = 0.0;
  std::string word_a, word_b;
  int position = 1;
  long orbit_n = 100000;
  c_orb->add_option("--alpha", alpha, "rotation number (decimal)");
  c_orb->add_option("--beta", beta, "rotation number (decimal)");
  c_orb->add_option("--word-a", word_a, "elliptic word for alpha (with a spec)");
  c_orb->add_option("--word-b", word_b, "elliptic word for beta (with a spec)");
  c_orb->add_option("--embedding", position, "tuple position used for extraction");
  c_orb->add_option("--n", orbit_n, "orbit length");

  try {
    app.parse(argc, argv);
    if (c_group->parsed()) return run_group(o_group);
    if (c_enum->parsed()) return run_enumerate(o_enum);
    if (c_cone->parsed()) return run_cone(o_cone);
    if (c_fur->parsed()) return run_furstenberg(o_fur);
    if (c_zar->parsed()) return run_zariski(o_zar);
    if (c_par->parsed()) return run_parabolic(o_par, word_u, word_v, n_list);
    if (c_sch->parsed()) return run_schottky(o_sch, word_g, word_h, max_power, check_words);
    if (c_orb->parsed())
      return run_torus_orbit(o_orb, alpha, beta, word_a, word_b, position, orbit_n);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << io::error_json("BadFlag", e.what());
    return 1;
  } catch (const Error& e) {
    std::cerr << io::error_json(e.code_name(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << io::error_json("Internal", e.what());
    return 1;
  }
  return 0;
}
