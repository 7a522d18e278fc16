#pragma once

// Reference implementations for the tests. Nothing here calls the library's
// oracles: each family is decided straight from its definition, usually by
// exhaustive search over extensions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "symdyn/alphabet.hpp"

namespace brute {

using symdyn::Symbol;
using symdyn::Word;
using Pred = std::function<bool(const Word&)>;

inline std::vector<Word> words(std::size_t k, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] + 1u == k) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

inline std::vector<Word> filter(std::size_t k, std::size_t n, const Pred& p) {
  std::vector<Word> out;
  for (auto& w : words(k, n))
    if (p(w)) out.push_back(w);
  return out;
}

inline bool has_factor(const Word& w, const Word& f) {
  return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

// Locally admissible words; with pad > 0 the word must also sit in the middle
// of a locally admissible word with pad extra symbols on each side.
inline bool sft_member(std::size_t k, const std::vector<Word>& forbidden, const Word& w, std::size_t pad) {
  auto ok = [&](const Word& x) {
    for (const auto& f : forbidden)
      if (has_factor(x, f)) return false;
    return true;
  };
  if (!ok(w)) return false;
  // Left and right extensions interact through short words, so the padded
  // word is searched as a whole.
  Word x(pad, 0);
  x.insert(x.end(), w.begin(), w.end());
  x.resize(w.size() + 2 * pad, 0);
  std::function<bool(std::size_t)> fill_right = [&](std::size_t i) -> bool {
    if (i == x.size()) return ok(x);
    for (Symbol s = 0; s < k; ++s) {
      x[i] = s;
      Word pre(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      if (ok(pre) && fill_right(i + 1)) return true;
    }
    return false;
  };
  std::function<bool(std::size_t)> fill_left = [&](std::size_t i) -> bool {
    if (i == 0) return fill_right(pad + w.size());
    for (Symbol s = 0; s < k; ++s) {
      x[i - 1] = s;
      Word suf(x.begin() + static_cast<std::ptrdiff_t>(i) - 1, x.begin() + static_cast<std::ptrdiff_t>(pad + w.size()));
      if (ok(suf) && fill_left(i - 1)) return true;
    }
    return false;
  };
  return fill_left(pad);
}

inline bool golden(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == 1 && w[i + 1] == 1) return false;
  return true;
}

inline bool at_most_one_one(const Word& w) { return std::count(w.begin(), w.end(), 1) <= 1; }

inline std::size_t ceil_sqrt(std::size_t n) {
  std::size_t r = 0;
  while (r * r < n) ++r;
  return r;
}

inline bool bounded_density(const Word& w, const std::function<std::size_t(std::size_t)>& g) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t ones = 0;
    for (std::size_t j = i; j < w.size(); ++j) {
      ones += w[j];
      if (ones > g(j - i + 1)) return false;
    }
  }
  return true;
}

// Every suffix of w is lexicographically at most the expansion prefix of the
// same length.
inline bool beta_member(const Word& w, const std::function<unsigned(std::size_t)>& digit) {
  for (std::size_t s = 0; s < w.size(); ++s)
    for (std::size_t i = s; i < w.size(); ++i) {
      unsigned d = digit(i - s);
      if (w[i] < d) break;
      if (w[i] > d) return false;
    }
  return true;
}

// Words of length n appearing in concatenations of the generators.
inline std::set<Word> coded_language(const std::vector<Word>& gens, std::size_t n) {
  std::size_t longest = 0;
  for (const auto& g : gens) longest = std::max(longest, g.size());
  std::size_t len = n + 2 * longest;
  std::set<Word> out;
  Word cur;
  std::function<void()> rec = [&] {
    if (cur.size() >= len) {
      for (std::size_t i = 0; i + n <= cur.size(); ++i) out.insert(Word(cur.begin() + i, cur.begin() + i + n));
      return;
    }
    for (const auto& g : gens) {
      cur.insert(cur.end(), g.begin(), g.end());
      rec();
      cur.resize(cur.size() - g.size());
    }
  };
  rec();
  return out;
}

inline std::size_t hamming(const Word& a, const Word& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

inline Word cat(const Word& a, const Word& b) {
  Word c = a;
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

inline bool cyclic_ok(const Word& w, const Pred& member, std::size_t reps) {
  Word x;
  for (std::size_t r = 0; r < reps; ++r) x.insert(x.end(), w.begin(), w.end());
  return member(x);
}

// Seeded random forbidden lists for property tests: 1..3 words of length 2..3
// over a binary or ternary alphabet.
struct RandomSft {
  std::size_t k;
  std::vector<Word> forbidden;
};

inline RandomSft random_sft(std::mt19937_64& rng) {
  RandomSft r;
  r.k = 2 + rng() % 2;
  std::size_t count = 1 + rng() % 3;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t len = 2 + rng() % 2;
    Word f(len);
    for (auto& s : f) s = static_cast<Symbol>(rng() % r.k);
    r.forbidden.push_back(f);
  }
  return r;
}

}  // namespace brute
