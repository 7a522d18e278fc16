#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "symdyn/alphabet.hpp"

namespace symdyn {

struct SpanningSet {
  std::size_t alphabet_size = 0;
  std::size_t length = 0;
  std::size_t radius = 0;
  std::vector<Word> words;  // sorted lexicographically
  bool verified = false;
  bool exhaustive = false;  // verification covered all of A^n rather than a sample
  std::size_t sample_size = 0;
  double reference_bound = 0;  // (16 / n^2) |A|^n
};

// Greedy cover of A^n by Hamming balls of the given radius: repeatedly take
// the word whose ball holds the most uncovered words (lexicographically first
// on ties). Coverage is verified exhaustively when |A|^n <= 10^6, otherwise on
// a seeded random sample; a failed verification throws.
SpanningSet build_spanning_set(std::size_t alphabet_size, std::size_t length, std::size_t radius,
                               std::uint64_t sample_seed = 1);

// Smallest Hamming distance from w to a member of the set.
std::size_t distance_to_set(const std::vector<Word>& set, WordView w);

}  // namespace symdyn
