#include <algorithm>
#include <set>

#include "symdyn/errors.hpp"
#include "symdyn/families.hpp"
#include "symdyn/mistake_function.hpp"
#include "symdyn/spanning.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

// ---------------------------------------------------------------- explicit generators

ExplicitCodedOracle::ExplicitCodedOracle(Alphabet alphabet, std::vector<Word> generators)
    : alphabet_(std::move(alphabet)), generators_(std::move(generators)) {
  if (generators_.empty()) throw SpecError("coded shift needs at least one generator");
  std::sort(generators_.begin(), generators_.end(), ShortlexLess{});
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  for (const auto& g : generators_) {
    if (g.empty()) throw SpecError("generators must be nonempty");
    for (Symbol s : g)
      if (s >= alphabet_.size()) throw SpecError("generator uses a symbol outside the alphabet");
    WordView v(g);
    whole_.insert(word_key(v));
    for (std::size_t i = 0; i <= g.size(); ++i) {
      prefixes_.insert(word_key(v.first(i)));
      suffixes_.insert(word_key(v.subspan(i)));
      for (std::size_t j = i; j <= g.size(); ++j) infixes_.insert(word_key(v.subspan(i, j - i)));
    }
  }
}

bool ExplicitCodedOracle::is_generator(WordView w) const { return whole_.count(word_key(w)) > 0; }
bool ExplicitCodedOracle::is_generator_suffix(WordView w) const { return suffixes_.count(word_key(w)) > 0; }
bool ExplicitCodedOracle::is_generator_prefix(WordView w) const { return prefixes_.count(word_key(w)) > 0; }
bool ExplicitCodedOracle::is_generator_infix(WordView w) const { return infixes_.count(word_key(w)) > 0; }

// w = s g_1 ... g_k p with s a generator suffix, p a generator prefix, or w
// inside a single generator.
Membership ExplicitCodedOracle::contains(WordView w) const {
  for (Symbol s : w)
    if (s >= alphabet_.size()) return Membership::out();
  if (is_generator_infix(w)) return Membership::in();
  std::size_t n = w.size();
  std::vector<char> reach(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) reach[i] = is_generator_suffix(w.first(i));
  for (std::size_t i = 1; i < n; ++i) {
    if (!reach[i]) continue;
    for (std::size_t j = i + 1; j <= n; ++j)
      if (!reach[j] && is_generator(w.subspan(i, j - i))) reach[j] = 1;
  }
  for (std::size_t i = 1; i <= n; ++i)
    if (reach[i] && is_generator_prefix(w.subspan(i))) return Membership::in();
  return Membership::out();
}

// ---------------------------------------------------------------- double-log generators

Alphabet signed_alphabet(std::size_t n) {
  std::vector<std::string> names;
  std::vector<long> labels;
  for (long v = -static_cast<long>(n); v <= -1; ++v) {
    names.push_back(std::to_string(v));
    labels.push_back(v);
  }
  for (long v = 1; v <= static_cast<long>(n); ++v) {
    names.push_back(std::to_string(v));
    labels.push_back(v);
  }
  return Alphabet(std::move(names), std::move(labels));
}

std::vector<LogLogOracle::Block> LogLogOracle::blocks_for_length(std::size_t n) {
  std::vector<Block> out;
  if (n < 4) return out;
  std::size_t k = floor_log2_log2(n);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t a = std::size_t{1} << (std::size_t{1} << i);
    std::size_t b = std::size_t{1} << (std::size_t{1} << (i + 1));
    out.push_back({a, b});
  }
  return out;
}

LogLogOracle::LogLogOracle(const LogLogGenerators& params, std::optional<std::size_t> horizon)
    : params_(params), horizon_(horizon), alphabet_(signed_alphabet(params.n_symbols)) {
  if (params_.n_symbols < 2) throw SpecError("the double-log construction needs N >= 2");
  if (params_.n_max < 4) throw SpecError("the double-log construction needs n_max >= 4");
  for (const auto& block : blocks_for_length(params_.n_max)) {
    std::size_t len = block.end - block.start;
    spanning_[len] = build_spanning_set(params_.n_symbols, len, params_.radius).words;
  }
}

std::size_t LogLogOracle::horizon_for(std::size_t n) const {
  if (horizon_) return *horizon_;
  std::size_t tail_padding = 0;
  for (std::size_t j = 0; j < 5; ++j) {
    std::size_t lo = std::size_t{1} << (std::size_t{1} << j);
    std::size_t hi = (j + 1 < 6) ? (std::size_t{1} << (std::size_t{1} << (j + 1))) - 1 : 0;
    if (hi > lo && hi - lo >= n) {
      tail_padding = hi - n;
      break;
    }
  }
  return std::max(4 * n, tail_padding);
}

Symbol LogLogOracle::magnitude(Symbol s) const {
  std::size_t n = params_.n_symbols;
  return static_cast<Symbol>(s < n ? n - 1 - s : s - n);
}

Symbol LogLogOracle::from_magnitude(Symbol m, int sign) const {
  std::size_t n = params_.n_symbols;
  return static_cast<Symbol>(sign < 0 ? n - 1 - m : n + m);
}

Membership LogLogOracle::block_member(std::size_t length, WordView content) const {
  auto it = spanning_.find(length);
  if (it == spanning_.end()) return Membership::unknown(length);
  return Membership::from_bool(std::binary_search(it->second.begin(), it->second.end(),
                                                  Word(content.begin(), content.end())));
}

Membership LogLogOracle::block_has_suffix(std::size_t length, WordView tail) const {
  if (tail.empty()) return Membership::in();
  auto it = spanning_.find(length);
  if (it == spanning_.end()) return Membership::unknown(length);
  for (const auto& u : it->second)
    if (std::equal(tail.begin(), tail.end(), u.end() - static_cast<std::ptrdiff_t>(tail.size())))
      return Membership::in();
  return Membership::out();
}

Membership LogLogOracle::in_t_plus(WordView m) const {
  if (m.empty() || m[0] != 0) return Membership::out();
  Membership status = Membership::in();
  for (const auto& b : blocks_for_length(m.size())) {
    status = both(status, block_member(b.end - b.start, m.subspan(b.start, b.end - b.start)));
    if (status.is_out()) break;
  }
  return status;
}

Membership LogLogOracle::in_t(WordView w) const {
  if (w.empty()) return Membership::out();
  int s = sign(w[0]);
  Word m(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sign(w[i]) != s) return Membership::out();
    m[i] = magnitude(w[i]);
  }
  return in_t_plus(m);
}

Membership LogLogOracle::suffix_feasible(WordView m, std::size_t budget) const {
  bool unknown = false;
  for (std::size_t q = 0; q <= budget; ++q) {
    if (q == 0 && (m.empty() || m[0] != 0)) continue;
    std::size_t total = q + m.size();
    Membership status = Membership::in();
    for (const auto& b : blocks_for_length(total)) {
      if (b.end <= q) continue;
      std::size_t len = b.end - b.start;
      if (b.start >= q)
        status = both(status, block_member(len, m.subspan(b.start - q, len)));
      else
        status = both(status, block_has_suffix(len, m.first(b.end - q)));
      if (status.is_out()) break;
    }
    if (status.is_in()) return status;
    unknown = unknown || status.is_unknown();
  }
  return unknown ? Membership::unknown(budget) : Membership::out();
}

// reach[i]: can w[0, i) be parsed as (suffix of a T-word)(T-word)* ending on a
// piece boundary at i.
std::vector<Membership> LogLogOracle::reach_statuses(WordView w) const {
  std::size_t n = w.size();
  std::size_t budget = horizon_for(n);
  std::vector<Membership> reach(n + 1, Membership::out());
  Word m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = magnitude(w[i]);
  std::size_t first_run = 1;
  while (first_run < n && sign(w[first_run]) == sign(w[0])) ++first_run;
  for (std::size_t i = 1; i <= first_run; ++i) reach[i] = suffix_feasible(WordView(m).first(i), budget);
  for (std::size_t i = 1; i < n; ++i) {
    if (reach[i].is_out()) continue;
    for (std::size_t j = i + 1; j <= n && sign(w[j - 1]) == sign(w[i]); ++j) {
      if (reach[j].is_in()) continue;
      Membership piece = in_t_plus(WordView(m).subspan(i, j - i));
      reach[j] = either(reach[j], both(reach[i], piece));
    }
  }
  return reach;
}

Membership LogLogOracle::contains(WordView w) const {
  for (Symbol s : w)
    if (s >= alphabet_.size()) return Membership::out();
  if (w.empty()) return Membership::in();
  return reach_statuses(w).back();
}

// A word of one sign can always sit at the end of a T-word under the default
// padding budget (it reaches the unconstrained tail), so its followers depend only on the sign. Otherwise the
// followers are fixed by the open pieces of the last run: for every reachable
// boundary inside it, the symbols after the boundary at positions that some
// T-membership test can inspect.
std::string LogLogOracle::follower_key(WordView w) const {
  if (horizon_ || w.empty()) return LanguageOracle::follower_key(w);
  int s = sign(w.back());
  std::size_t p = w.size();
  while (p > 0 && sign(w[p - 1]) == s) --p;
  if (p == 0) return s < 0 ? "M-" : "M+";

  std::vector<bool> inspected;
  for (const auto& b : blocks_for_length(params_.n_max)) {
    if (inspected.size() < b.end) inspected.resize(b.end, false);
    for (std::size_t i = b.start; i < b.end; ++i) inspected[i] = true;
  }
  if (inspected.empty()) inspected.push_back(true);
  inspected[0] = true;

  auto reach = reach_statuses(w);
  std::set<std::string> entries;
  for (std::size_t b = p; b <= w.size(); ++b) {
    if (reach[b].is_out()) continue;
    WordView open = w.subspan(b);
    Word canon(open.size(), 0);
    for (std::size_t i = 0; i < open.size(); ++i)
      if (i < inspected.size() && inspected[i]) canon[i] = magnitude(open[i]);
    if (!open.empty() && in_t(open).is_out()) continue;
    entries.insert(word_key(canon) + (reach[b].is_in() ? "I" : "U") + "|");
  }
  std::string key = s < 0 ? "R-" : "R+";
  for (const auto& e : entries) key += std::to_string(e.size()) + ":" + e;
  return key;
}

}  // namespace symdyn
