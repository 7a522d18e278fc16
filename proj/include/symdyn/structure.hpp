#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/mistake_function.hpp"
#include "symdyn/properties.hpp"
#include "symdyn/shift.hpp"

namespace symdyn {

// ---- irreducibility ----

struct Connection {
  Word u, v, w;  // u w v in L
};

struct IrreducibilityResult {
  PropertyVerdict verdict;
  // One connection per pair of class representatives of maximal length,
  // with the shortest, then lexicographically first, connector.
  std::vector<Connection> connections;
  std::size_t max_gap = 0;
};

IrreducibilityResult check_irreducible(const Shift& shift, std::size_t horizon, std::size_t gap_bound = 32,
                                       std::size_t state_budget = 1u << 22);

// ---- gluing construction ----

struct GluingStep {
  Word w, v;
  std::vector<Word> d;  // D(w, v), lexicographic
};

struct GluingData {
  bool stabilized = false;
  std::string reason;  // set when not stabilized
  std::size_t i = 0;
  Word y, v0;
  Word w, v;        // final w^(k), v^(k)
  Word y_prime;     // first element of the final D
  Word u, u_prime;  // w y and w y'
  std::vector<Word> d;
  std::vector<GluingStep> chain;
  std::size_t horizon = 0;
};

// Refines (w, v) while some extension with |w'|, |v'| <= horizon strictly
// shrinks D(w, v). Extensions are tried by total length, then shortlex in w',
// then shortlex in v'.
GluingData build_gluing(const Shift& shift, std::size_t horizon);

// Builds the data directly from chosen words; used for synthetic checks.
GluingData gluing_from_words(const Shift& shift, Word u, Word u_prime, Word v);

// ---- decomposition ----

struct Decomposition {
  enum class Kind { G, CpGCs, B };
  Kind kind = Kind::B;
  Word prefix, core, suffix;
};

std::string to_string(Decomposition::Kind k);

bool in_g(const Shift& shift, const GluingData& glue, WordView w);
bool in_cp(const GluingData& glue, WordView w);
bool in_cs(const GluingData& glue, WordView w);
bool in_c_prime(const GluingData& glue, WordView w);

// First split w = x g s over valid starts of g (increasing), with s either
// the suffix at the last occurrence of u or empty. The empty word counts as a
// member of C^p and of C^s. Words without any split are B.
Decomposition classify_word(const Shift& shift, const GluingData& glue, WordView w);

struct ObstructionRow {
  std::size_t n = 0;
  std::uint64_t total = 0, g = 0, cp = 0, cs = 0, c_prime = 0, b = 0, decomposable = 0, obstructions = 0;
  double bbound = 0;  // right side of the B-count bound
  bool bbound_ok = true;
  double h_total = 0, h_obstructions = 0;
};

std::vector<ObstructionRow> obstruction_entropies(const Shift& shift, const GluingData& glue, std::size_t n_max);

// Exhaustive check that x u in L and z in vL ∩ L imply x u' z in L for
// |x| <= max_x and |z| <= max_z. Returns the first counterexample (x, z).
struct UuPrimeCheck {
  std::uint64_t instances = 0;
  std::optional<std::pair<Word, Word>> counterexample;
  bool inconclusive = false;
};
UuPrimeCheck check_uu_prime(const Shift& shift, const GluingData& glue, std::size_t max_x, std::size_t max_z);

struct ClosureReport {
  PropertyVerdict spec_i, inter_iiia, union_iiib;
  std::size_t window = 0;  // sample word length
};

// Samples windows of random walks in the language (fixed seed) as stand-ins
// for points and checks the closure implications with L = |v|.
ClosureReport check_closure_conditions(const Shift& shift, const GluingData& glue, std::size_t samples,
                                       std::size_t n_max = 10, std::uint64_t seed = 1);

// gcd{|w| + |u| : w in G_{<=n_max}}; 0 when G_{<=n_max} is empty.
std::size_t gluing_gcd(const Shift& shift, const GluingData& glue, std::size_t n_max);

// ---- measure center ----

// Greedy leftmost count of pairwise disjoint occurrences of u in w.
std::size_t disjoint_occurrences(WordView u, WordView w);

struct MeasureCenterLevel {
  std::size_t n = 0;
  std::vector<Word> kept;     // some w in L_{<=H} has g(|w|)+1 disjoint copies
  std::vector<Word> flagged;  // the rest of L_n
};

struct MeasureCenterApprox {
  std::size_t search_horizon = 0;
  std::vector<MeasureCenterLevel> levels;  // n = 1..n_max
  // The kept sets can only miss words whose witness is longer than H, so
  // they approximate L of the measure center from below.
  std::string direction = "under";
  bool inconclusive = false;
};

MeasureCenterApprox measure_center_approx(const Shift& shift, const MistakeFunction& g, std::size_t n_max,
                                          std::size_t search_horizon);

}  // namespace symdyn
