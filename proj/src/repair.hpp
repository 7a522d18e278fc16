#pragma once

// Search for the closest in-language replacement of one word next to a fixed
// neighbour. Shared by the AS/LAS/RAS checks, min_mistakes and estimate_i.

#include <optional>
#include <unordered_map>
#include <vector>

#include "symdyn/oracle.hpp"
#include "symdyn/word.hpp"

namespace symdyn::detail {

enum class Side { Left, Right };  // position of the perturbed word

struct RepairOutcome {
  Membership status = Membership::out();
  Word word;
  std::size_t distance = 0;
};

class RepairSearch {
 public:
  // `level` lists L_{|x|} lexicographically; when present it replaces sphere
  // generation whenever the sphere would be larger.
  RepairSearch(const LanguageOracle& oracle, Side side, WordView fixed)
      : oracle_(oracle), side_(side), fixed_(fixed.begin(), fixed.end()) {}

  Membership test(const Word& candidate);

  // Candidates are tried by distance, then lexicographically, so without a
  // hint the result is the lexicographically first repair at minimum distance.
  RepairOutcome run(WordView x, std::size_t radius, const std::vector<Word>* level,
                    const std::optional<Word>& hint = std::nullopt);

  void reset_fixed(WordView fixed) {
    fixed_.assign(fixed.begin(), fixed.end());
    memo_.clear();
  }

 private:
  const LanguageOracle& oracle_;
  Side side_;
  Word fixed_;
  Word buffer_;
  std::unordered_map<Word, Membership, WordHash> memo_;
};

}  // namespace symdyn::detail
