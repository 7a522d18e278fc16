#include "symdyn/word.hpp"

#include <boost/functional/hash.hpp>
#include <cmath>

#include "symdyn/errors.hpp"

namespace symdyn {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  return boost::hash_range(w.begin(), w.end());
}

std::optional<std::size_t> hamming_distance(WordView a, WordView b) {
  if (a.size() != b.size()) return std::nullopt;
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

Word concat(WordView a, WordView b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word concat(WordView a, WordView b, WordView c) {
  Word out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

Word reversed(WordView w) { return Word(w.rbegin(), w.rend()); }

Word repeat(WordView w, std::size_t times) {
  Word out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word constant_word(Symbol s, std::size_t n) { return Word(n, s); }

std::optional<std::size_t> find_subword(WordView needle, WordView haystack, std::size_t from) {
  if (needle.size() > haystack.size()) return std::nullopt;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i)
    if (std::equal(needle.begin(), needle.end(), haystack.begin() + static_cast<std::ptrdiff_t>(i)))
      return i;
  return std::nullopt;
}

bool is_subword(WordView needle, WordView haystack) {
  return find_subword(needle, haystack).has_value();
}

std::size_t count_symbol(WordView w, Symbol s) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), s));
}

std::string word_key(WordView w) {
  std::string out;
  out.reserve(2 * w.size());
  for (Symbol s : w) {
    out.push_back(static_cast<char>(s & 0xff));
    out.push_back(static_cast<char>(s >> 8));
  }
  return out;
}

bool next_word(Word& w, std::size_t alphabet_size) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] + 1u < alphabet_size) {
      ++w[i];
      return true;
    }
    w[i] = 0;
  }
  return false;
}

std::vector<Word> all_words(std::size_t alphabet_size, std::size_t n, std::size_t limit) {
  if (alphabet_size == 0) return n == 0 ? std::vector<Word>{Word{}} : std::vector<Word>{};
  double total = std::pow(static_cast<double>(alphabet_size), static_cast<double>(n));
  if (total > static_cast<double>(limit))
    throw BudgetExceeded("refusing to list " + std::to_string(alphabet_size) + "^" +
                         std::to_string(n) + " words");
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(total));
  Word w(n, 0);
  do out.push_back(w);
  while (next_word(w, alphabet_size));
  return out;
}

}  // namespace symdyn
