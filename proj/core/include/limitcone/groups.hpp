#pragma once

#include <string>
#include <vector>

#include "limitcone/moebius.hpp"

namespace limitcone {

struct Generator {
  std::string name;
  MoebiusElement mat;
};

enum class SpecProvenance { Builtin, User };

// The computational stand-in for a group Gamma = S^*: exact generators over
// a totally real field plus the list of Galois embeddings in use. The first
// entry of embedding_order is the identity embedding.
struct GroupSpec {
  FieldPtr field;
  std::vector<Generator> generators;
  std::vector<int> embedding_order;
  std::string label;
  SpecProvenance provenance = SpecProvenance::User;
  bool diagonal_by_construction = false;

  int r() const { return static_cast<int>(embedding_order.size()); }
  int identity_root() const { return embedding_order.front(); }
};

// Alphabet for reduced words: each generator and (when distinct) its inverse.
struct Letter {
  std::string display;  // "T" or "T^-1"
  MoebiusElement mat;
  int inverse;  // index of the cancelling letter
};
std::vector<Letter> letters_of(const GroupSpec& spec);

// tau_q: tau_q(2cos x) = 2cos(q x); monic, integer coefficients.
QPoly trace_polynomial(long q);
// Minimal polynomial of 2cos(2*pi/n), built from the trace recursion by
// exact square roots and divisor peeling (no general factorization).
QPoly cos_minimal_polynomial(long n);

// Hecke group H(q) = (2, q, infinity): S = [[0,-1],[1,0]], T = [[1,lambda_q],[0,1]].
GroupSpec hecke_group(long q);
// Triangle group of signature (q, infinity, infinity).
GroupSpec triangle_q_inf_inf(long q);
// PSL(2,Z) embedded diagonally over the given totally real field.
GroupSpec pslz_diag(const QPoly& minpoly);
// "hecke:5", "tri-qinfinf:5", "pslz-diag:x^2-5"
GroupSpec builtin_group(const std::string& name);

struct EnumerationResult {
  std::vector<MoebiusElement> elements;        // canonical, deduplicated, BFS order
  std::vector<std::pair<int, int>> genealogy;  // (parent index, letter index); (-1,-1) for id
  std::vector<int> word_length;
  std::vector<long> count_per_depth;  // new elements per word length
  bool cap_exceeded = false;
  long depth = 0;
  long cap = 0;

  std::string word_of(size_t index, const std::vector<Letter>& letters) const;
};

// Deterministic reduced-word BFS with exact projective dedup. Results are
// independent of the worker count (candidates are merged in word order).
EnumerationResult enumerate_group(const GroupSpec& spec, long depth, long cap,
                                  int threads = 1);

// Sampled invariant traces {tr(g^2) = tr(g)^2 - 2}, sorted and deduplicated.
std::vector<FieldElement> invariant_traces(const GroupSpec& spec, long depth, long cap);
std::vector<FieldElement> invariant_traces(const EnumerationResult& enumeration);

// Per-root-index unboundedness flags ([i-1] for root i): some sampled trace
// has |phi_i(tr)| > 3 (margin 1 over the hyperbolic threshold), exactly.
std::vector<bool> detect_unbounded(const GroupSpec& spec, long depth, long cap);
std::vector<bool> detect_unbounded_traces(const FieldPtr& field,
                                          const std::vector<FieldElement>& traces);

struct GroupValidation {
  bool ok = true;
  std::vector<std::string> notes;
};
// Relation checks for builtins plus the empirical discreteness guard: no
// EllipticInfinite class may appear at the identity embedding.
GroupValidation validate_group(const GroupSpec& spec, long depth = 6, long cap = 4000,
                               long order_bound = 200);

// Word like "T^2*S" or "T*T*S^-1" evaluated over the spec generators.
MoebiusElement evaluate_word(const GroupSpec& spec, const std::string& word);

}  // namespace limitcone
