#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symdyn/shift.hpp"

namespace symdyn {

// The words of one length, split by oracle answer, each list lexicographic.
struct LanguageSlice {
  std::size_t length = 0;
  std::vector<Word> words;
  std::vector<Word> unknown;
  bool approximate() const { return !unknown.empty(); }
  std::uint64_t certain() const { return words.size(); }
  std::uint64_t possible() const { return words.size() + unknown.size(); }
};

// Depth-first extension with prefix pruning. Prefixes answered Unknown are
// still extended, since a later answer can be In.
LanguageSlice enumerate_language(const Shift& shift, std::size_t n);
// Every length from 0 to n_max at once.
std::vector<LanguageSlice> enumerate_language_upto(const Shift& shift, std::size_t n_max);

struct CountRecord {
  std::size_t n = 0;
  std::uint64_t certain = 0;
  std::uint64_t possible = 0;
  bool approximate() const { return certain != possible; }
};

// |L_n| for n = 0..n_max, through the count cache.
std::vector<CountRecord> count_language(const Shift& shift, std::size_t n_max);

// Count memo keyed by (shift fingerprint, n). Entries live in memory and,
// when a directory is configured, in one checksummed text file per key:
//
//   symdyn-count 1
//   fingerprint <hex>
//   n <n>
//   certain <count>
//   possible <count>
//   sha256 <hex digest of the lines above>
//
// Files that fail to parse or verify are ignored and rewritten.
class CountCache {
 public:
  static CountCache& instance();
  std::optional<CountRecord> lookup(const std::string& fingerprint, std::size_t n);
  void store(const std::string& fingerprint, const CountRecord& record);
  // Empty path disables the disk layer. Defaults to $SYMDYN_CACHE_DIR.
  void set_directory(std::string path);
  const std::string& directory() const { return dir_; }
  void clear_memory();
  std::string file_path(const std::string& fingerprint, std::size_t n) const;
  static std::string encode(const std::string& fingerprint, const CountRecord& record);
  static std::optional<CountRecord> decode(const std::string& text, const std::string& fingerprint, std::size_t n);

 private:
  CountCache();
  std::string dir_;
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Finite collection of words indexed by length, complete up to depth().
class WordCollection {
 public:
  WordCollection(Alphabet alphabet, std::size_t depth, bool factorial);

  static WordCollection from_shift(const Shift& shift, std::size_t depth);
  // Every word over the alphabet of length <= depth accepted by the predicate.
  static WordCollection from_predicate(Alphabet alphabet, std::size_t depth, bool factorial,
                                       const std::function<bool(WordView)>& pred);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t depth() const { return depth_; }
  bool factorial() const { return factorial_; }
  void add(Word w);
  // Throws InsufficientDepth past depth().
  const std::set<Word>& at(std::size_t n) const;
  bool contains(WordView w) const;
  // First member (shortlex) with a subword outside the collection.
  std::optional<Word> factoriality_violation() const;

 private:
  Alphabet alphabet_;
  std::size_t depth_;
  bool factorial_;
  std::vector<std::set<Word>> by_length_;
};

// Oracle view of a collection: lookups past the depth are Unknown.
class CollectionOracle : public LanguageOracle {
 public:
  explicit CollectionOracle(std::shared_ptr<const WordCollection> d) : d_(std::move(d)) {}
  const Alphabet& alphabet() const override { return d_->alphabet(); }
  Membership contains(WordView w) const override;
  bool exact() const override { return false; }

 private:
  std::shared_ptr<const WordCollection> d_;
};

// D_n^{(kn)} = {w in D_n : uwv in D for some u, v in D_kn}, sorted.
std::vector<Word> extendable_core(const WordCollection& d, std::size_t n, std::size_t k);
// Same for a factorial language given by membership; the search extends
// right then left depth-first and gives up past the node budget.
std::vector<Word> extendable_core(const LanguageOracle& d, std::size_t n, std::size_t k,
                                  std::size_t node_budget = 1u << 26);

struct CoreSequence {
  std::size_t n = 0;
  std::vector<std::size_t> sizes;  // sizes[j] = |D_n^{(jn)}|, sizes[0] = |D_n|
  std::optional<std::size_t> stabilized_at;  // first k with core_k == core_{k+1}
  std::vector<Word> core;  // last computed core
};

// Iterates k = 1..k_max, stopping once two consecutive cores agree.
CoreSequence core_sequence(const WordCollection& d, std::size_t n, std::size_t k_max);
CoreSequence core_sequence(const LanguageOracle& d, std::size_t n, std::size_t k_max);

}  // namespace symdyn
