#pragma once

// Membership oracles for each shift family. Most callers go through
// make_shift; these are exposed for family-specific machinery (transfer
// matrices, the coded counterexample audit) and for tests.

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "symdyn/oracle.hpp"
#include "symdyn/shift_spec.hpp"

namespace symdyn {

class FullOracle : public LanguageOracle {
 public:
  explicit FullOracle(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView) const override { return Membership::in(); }
  std::string follower_key(WordView) const override { return "*"; }
  std::string predecessor_key(WordView) const override { return "*"; }
  PeriodicAnswer periodic(WordView w) const override { return {Membership::from_bool(!w.empty()), true}; }

 private:
  Alphabet alphabet_;
};

// Pruned de Bruijn presentation: vertices are allowed words of length k,
// edges allowed words of length k+1. Only vertices on bi-infinite paths survive.
struct SftGraph {
  std::size_t order = 1;
  std::vector<Word> vertices;
  std::vector<std::vector<std::size_t>> successors;
  std::unordered_map<std::string, std::size_t> index;
};

class SftOracle : public LanguageOracle {
 public:
  SftOracle(Alphabet alphabet, std::vector<Word> forbidden);
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  Membership contains_extension(WordView w) const override;
  Membership contains_prepension(WordView w) const override;
  std::string follower_key(WordView w) const override;
  std::string predecessor_key(WordView w) const override;
  PeriodicAnswer periodic(WordView w) const override;

  const SftGraph& graph() const { return graph_; }
  bool empty_shift() const { return graph_.vertices.empty(); }

 private:
  bool window_allowed(WordView window) const;  // length k+1, both vertices alive
  Alphabet alphabet_;
  std::vector<Word> forbidden_;
  SftGraph graph_;
  std::vector<std::unordered_set<std::string>> short_words_;  // L_j for j < order
};

class BetaOracle : public LanguageOracle {
 public:
  explicit BetaOracle(const BetaSpec& spec);
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  Membership contains_extension(WordView w) const override;
  std::string follower_key(WordView w) const override;
  PeriodicAnswer periodic(WordView w) const override;
  unsigned digit(std::size_t i) const;

 private:
  Alphabet alphabet_;
  std::vector<unsigned> preperiod_, period_;
};

// Greedy digits of the expansion of 1 in base beta = num/den, computed in
// exact rational arithmetic to the given depth. The tail beyond the depth is
// unknown, so callers get an approximation of the quasi-greedy expansion.
std::vector<unsigned> greedy_expansion_digits(long num, long den, std::size_t depth);
// Lexicographically compares sigma^s of the infinite sequence d with d itself; true when <=.
bool beta_expansion_admissible(const std::vector<unsigned>& preperiod, const std::vector<unsigned>& period);

class SGapOracle : public LanguageOracle {
 public:
  explicit SGapOracle(SGapSpec spec);
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  std::string follower_key(WordView w) const override;
  std::string predecessor_key(WordView w) const override;
  PeriodicAnswer periodic(WordView w) const override;
  bool allowed_gap(std::size_t g) const;
  bool infinite() const { return spec_.tail_start.has_value(); }
  std::size_t max_gap() const;  // finite S only

 private:
  Alphabet alphabet_ = Alphabet::binary();
  SGapSpec spec_;
};

class BoundedDensityOracle : public LanguageOracle {
 public:
  explicit BoundedDensityOracle(MistakeFunction g) : g_(std::move(g)) {}
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  Membership contains_extension(WordView w) const override;
  Membership contains_prepension(WordView w) const override;
  std::string follower_key(WordView w) const override;
  std::string predecessor_key(WordView w) const override;
  PeriodicAnswer periodic(WordView w) const override;
  const MistakeFunction& g() const { return g_; }

 private:
  Alphabet alphabet_ = Alphabet::binary();
  MistakeFunction g_;
};

class AtMostOneOneOracle : public LanguageOracle {
 public:
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  std::string follower_key(WordView w) const override;
  std::string predecessor_key(WordView w) const override;
  PeriodicAnswer periodic(WordView w) const override;

 private:
  Alphabet alphabet_ = Alphabet::binary();
};

// Coded shift from an explicit finite generator list. Every word of the
// language embeds with padding below twice the longest generator, so the
// search is complete and the oracle is exact.
class ExplicitCodedOracle : public LanguageOracle {
 public:
  ExplicitCodedOracle(Alphabet alphabet, std::vector<Word> generators);
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  const std::vector<Word>& generators() const { return generators_; }

 private:
  bool is_generator(WordView w) const;
  bool is_generator_suffix(WordView w) const;
  bool is_generator_prefix(WordView w) const;
  bool is_generator_infix(WordView w) const;
  Alphabet alphabet_;
  std::vector<Word> generators_;
  std::unordered_set<std::string> whole_, prefixes_, suffixes_, infixes_;
};

// Coded shift generated by T^+ and T^- over {-N..-1, 1..N}. Words in T^+_n
// start with 1 and carry spanning-set blocks on [2^(2^i)+1, 2^(2^(i+1))] for
// i < floor(log2 log2 n). Spanning sets exist only for the blocks needed up to
// n_max, so membership of longer T-words, and of language words whose
// embedding needs more padding than the horizon, is Unknown.
class LogLogOracle : public LanguageOracle {
 public:
  LogLogOracle(const LogLogGenerators& params, std::optional<std::size_t> horizon);
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  bool exact() const override { return false; }
  std::string follower_key(WordView w) const override;

  // Magnitudes are 0-based: value v in 1..N is stored as v-1.
  Membership in_t_plus(WordView magnitudes) const;
  Membership in_t(WordView w) const;  // T^+ or T^- in signed symbols
  // Can the magnitude word s sit at the end of some T^+ word, with at most
  // `padding_budget` symbols before it?
  Membership suffix_feasible(WordView magnitudes, std::size_t padding_budget) const;

  struct Block {
    std::size_t start;  // 0-based first position
    std::size_t end;    // one past the last position
  };
  // Blocks constrained in T^+_n.
  static std::vector<Block> blocks_for_length(std::size_t n);
  const std::map<std::size_t, std::vector<Word>>& spanning_sets() const { return spanning_; }
  std::size_t n_symbols() const { return params_.n_symbols; }
  const LogLogGenerators& params() const { return params_; }

  int sign(Symbol s) const { return s < params_.n_symbols ? -1 : 1; }
  Symbol magnitude(Symbol s) const;
  Symbol from_magnitude(Symbol m, int sign) const;

 private:
  Membership block_member(std::size_t length, WordView content) const;
  Membership block_has_suffix(std::size_t length, WordView tail) const;
  // Padding budget for a word of length n: the configured horizon, else
  // max(4n, padding that puts the word in the unconstrained tail of
  // T^+_{2^(2^(j+1)) - 1} for the smallest j whose tail is long enough).
  std::size_t horizon_for(std::size_t n) const;
  std::vector<Membership> reach_statuses(WordView w) const;

  LogLogGenerators params_;
  std::optional<std::size_t> horizon_;
  Alphabet alphabet_;
  std::map<std::size_t, std::vector<Word>> spanning_;  // block length -> sorted set
};

class ProductOracle : public LanguageOracle {
 public:
  ProductOracle(OraclePtr left, OraclePtr right);
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  Membership contains_extension(WordView w) const override;
  Membership contains_prepension(WordView w) const override;
  bool exact() const override { return left_->exact() && right_->exact(); }
  std::string follower_key(WordView w) const override;
  std::string predecessor_key(WordView w) const override;
  PeriodicAnswer periodic(WordView w) const override;

  std::pair<Word, Word> split(WordView w) const;
  Word join(WordView a, WordView b) const;
  const LanguageOracle& left() const { return *left_; }
  const LanguageOracle& right() const { return *right_; }

 private:
  OraclePtr left_, right_;
  Alphabet alphabet_;
};

// Integer weight of each symbol used by sum block maps: the label, or for
// product alphabets the sum of the component weights.
std::vector<long> symbol_weights(const ShiftSpec& spec, const Alphabet& alphabet);

class FactorOracle : public LanguageOracle {
 public:
  FactorOracle(OraclePtr base, std::size_t radius, std::function<std::string(WordView)> window_map,
               std::size_t image_budget = 1u << 22);
  const Alphabet& alphabet() const override { return alphabet_; }
  Membership contains(WordView w) const override;
  bool exact() const override { return base_->exact(); }
  std::size_t radius() const { return radius_; }
  // Image symbol of a base window of length 2r+1.
  Symbol image(WordView window) const;
  const LanguageOracle& base() const { return *base_; }

 private:
  OraclePtr base_;
  std::size_t radius_;
  std::function<std::string(WordView)> map_;
  Alphabet alphabet_;
  std::unordered_map<std::string, Symbol> window_image_;
};

class ReflectedOracle : public LanguageOracle {
 public:
  explicit ReflectedOracle(OraclePtr base) : base_(std::move(base)) {}
  const Alphabet& alphabet() const override { return base_->alphabet(); }
  Membership contains(WordView w) const override;
  Membership contains_extension(WordView w) const override;
  Membership contains_prepension(WordView w) const override;
  bool exact() const override { return base_->exact(); }
  std::string follower_key(WordView w) const override;
  std::string predecessor_key(WordView w) const override;
  PeriodicAnswer periodic(WordView w) const override;

 private:
  OraclePtr base_;
};

}  // namespace symdyn
