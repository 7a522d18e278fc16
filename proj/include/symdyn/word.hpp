#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/alphabet.hpp"

namespace symdyn {

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// Length first, then lexicographic. Used wherever words of mixed length are listed.
inline bool shortlex_less(WordView a, WordView b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

// Returns nullopt for words of different lengths.
std::optional<std::size_t> hamming_distance(WordView a, WordView b);

Word concat(WordView a, WordView b);
Word concat(WordView a, WordView b, WordView c);
Word reversed(WordView w);
Word repeat(WordView w, std::size_t times);
Word constant_word(Symbol s, std::size_t n);

bool is_subword(WordView needle, WordView haystack);
std::optional<std::size_t> find_subword(WordView needle, WordView haystack, std::size_t from = 0);
std::size_t count_symbol(WordView w, Symbol s);

// Compact byte encoding of a word, usable as a map key.
std::string word_key(WordView w);

// Every word of length n over an alphabet of size k, lexicographic order.
// Throws BudgetExceeded past the limit.
std::vector<Word> all_words(std::size_t alphabet_size, std::size_t n, std::size_t limit = 1u << 24);

// Lexicographic successor within A^n; false when w was the last word.
bool next_word(Word& w, std::size_t alphabet_size);

}  // namespace symdyn
