#include <algorithm>
#include <cmath>
#include <deque>

#include "symdyn/errors.hpp"
#include "symdyn/families.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

namespace {

bool avoids(WordView w, const std::vector<Word>& forbidden) {
  for (const auto& f : forbidden)
    if (is_subword(f, w)) return false;
  return true;
}

}  // namespace

SftOracle::SftOracle(Alphabet alphabet, std::vector<Word> forbidden)
    : alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden)) {
  std::size_t longest = 0;
  for (const auto& f : forbidden_) {
    if (f.empty()) throw SpecError("forbidden words must be nonempty");
    for (Symbol s : f)
      if (s >= alphabet_.size()) throw SpecError("forbidden word uses a symbol outside the alphabet");
    longest = std::max(longest, f.size());
  }
  std::size_t k = std::max<std::size_t>(1, longest > 0 ? longest - 1 : 1);
  graph_.order = k;

  double total = std::pow(static_cast<double>(alphabet_.size()), static_cast<double>(k));
  if (total > 4e6) throw BudgetExceeded("de Bruijn graph of order " + std::to_string(k) + " is too large");

  std::vector<Word> candidates;
  for (auto& w : all_words(alphabet_.size(), k))
    if (avoids(w, forbidden_)) candidates.push_back(std::move(w));
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < candidates.size(); ++i) idx[word_key(candidates[i])] = i;

  std::vector<std::vector<std::size_t>> succ(candidates.size());
  std::vector<std::size_t> indeg(candidates.size(), 0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Word edge = candidates[i];
    edge.push_back(0);
    for (Symbol a = 0; a < alphabet_.size(); ++a) {
      edge.back() = a;
      if (!avoids(edge, forbidden_)) continue;
      auto it = idx.find(word_key(WordView(edge).subspan(1)));
      if (it == idx.end()) continue;
      succ[i].push_back(it->second);
      ++indeg[it->second];
    }
  }

  // Peel off vertices that cannot lie on a bi-infinite path.
  std::vector<bool> alive(candidates.size(), true);
  std::vector<std::size_t> outdeg(candidates.size());
  std::vector<std::vector<std::size_t>> pred(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    outdeg[i] = succ[i].size();
    for (auto j : succ[i]) pred[j].push_back(i);
  }
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (outdeg[i] == 0 || indeg[i] == 0) {
      alive[i] = false;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (auto j : succ[v])
      if (alive[j] && --indeg[j] == 0) {
        alive[j] = false;
        queue.push_back(j);
      }
    for (auto j : pred[v])
      if (alive[j] && --outdeg[j] == 0) {
        alive[j] = false;
        queue.push_back(j);
      }
  }

  std::vector<std::size_t> remap(candidates.size(), SIZE_MAX);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (alive[i]) {
      remap[i] = graph_.vertices.size();
      graph_.index[word_key(candidates[i])] = graph_.vertices.size();
      graph_.vertices.push_back(candidates[i]);
    }
  graph_.successors.resize(graph_.vertices.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!alive[i]) continue;
    for (auto j : succ[i])
      if (alive[j]) graph_.successors[remap[i]].push_back(remap[j]);
    std::sort(graph_.successors[remap[i]].begin(), graph_.successors[remap[i]].end());
  }

  short_words_.resize(k);
  for (const auto& v : graph_.vertices)
    for (std::size_t j = 0; j < k; ++j) short_words_[j].insert(word_key(WordView(v).first(j)));
}

bool SftOracle::window_allowed(WordView window) const {
  std::size_t k = graph_.order;
  auto a = graph_.index.find(word_key(window.first(k)));
  if (a == graph_.index.end()) return false;
  auto b = graph_.index.find(word_key(window.subspan(1, k)));
  if (b == graph_.index.end()) return false;
  const auto& s = graph_.successors[a->second];
  return std::binary_search(s.begin(), s.end(), b->second);
}

Membership SftOracle::contains(WordView w) const {
  std::size_t k = graph_.order;
  if (graph_.vertices.empty()) return Membership::out();
  if (w.size() < k) return Membership::from_bool(short_words_[w.size()].count(word_key(w)) > 0);
  if (w.size() == k) return Membership::from_bool(graph_.index.count(word_key(w)) > 0);
  for (std::size_t i = 0; i + k < w.size(); ++i)
    if (!window_allowed(w.subspan(i, k + 1))) return Membership::out();
  return Membership::in();
}

Membership SftOracle::contains_extension(WordView w) const {
  std::size_t k = graph_.order;
  if (w.size() <= k) return contains(w);
  return Membership::from_bool(window_allowed(w.subspan(w.size() - k - 1)));
}

Membership SftOracle::contains_prepension(WordView w) const {
  std::size_t k = graph_.order;
  if (w.size() <= k) return contains(w);
  return Membership::from_bool(window_allowed(w.first(k + 1)));
}

std::string SftOracle::follower_key(WordView w) const {
  if (w.size() < graph_.order) return LanguageOracle::follower_key(w);
  return "v" + word_key(w.last(graph_.order));
}

std::string SftOracle::predecessor_key(WordView w) const {
  if (w.size() < graph_.order) return LanguageOracle::predecessor_key(w);
  return "v" + word_key(w.first(graph_.order));
}

PeriodicAnswer SftOracle::periodic(WordView w) const {
  if (w.empty()) return {Membership::out(), true};
  // A cycle in the window graph is never pruned, so checking one full turn
  // plus the window length is exact.
  std::size_t reps = (graph_.order + 1 + w.size() - 1) / w.size() + 1;
  return {contains(repeat(w, reps)), true};
}

}  // namespace symdyn
