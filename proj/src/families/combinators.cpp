#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_set>

#include "symdyn/errors.hpp"
#include "symdyn/families.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

// ---------------------------------------------------------------- product

ProductOracle::ProductOracle(OraclePtr left, OraclePtr right) : left_(std::move(left)), right_(std::move(right)) {
  std::vector<std::string> names;
  for (const auto& a : left_->alphabet().names())
    for (const auto& b : right_->alphabet().names()) names.push_back("(" + a + "," + b + ")");
  alphabet_ = Alphabet(std::move(names));
}

std::pair<Word, Word> ProductOracle::split(WordView w) const {
  std::size_t nb = right_->alphabet().size();
  Word a(w.size()), b(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    a[i] = static_cast<Symbol>(w[i] / nb);
    b[i] = static_cast<Symbol>(w[i] % nb);
  }
  return {a, b};
}

Word ProductOracle::join(WordView a, WordView b) const {
  std::size_t nb = right_->alphabet().size();
  Word w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = static_cast<Symbol>(a[i] * nb + b[i]);
  return w;
}

Membership ProductOracle::contains(WordView w) const {
  auto [a, b] = split(w);
  Membership l = left_->contains(a);
  if (l.is_out()) return l;
  return both(l, right_->contains(b));
}

Membership ProductOracle::contains_extension(WordView w) const {
  auto [a, b] = split(w);
  Membership l = left_->contains_extension(a);
  if (l.is_out()) return l;
  return both(l, right_->contains_extension(b));
}

Membership ProductOracle::contains_prepension(WordView w) const {
  auto [a, b] = split(w);
  Membership l = left_->contains_prepension(a);
  if (l.is_out()) return l;
  return both(l, right_->contains_prepension(b));
}

namespace {
std::string pair_key(const std::string& a, const std::string& b) {
  return std::to_string(a.size()) + ":" + a + b;
}
}  // namespace

std::string ProductOracle::follower_key(WordView w) const {
  auto [a, b] = split(w);
  return pair_key(left_->follower_key(a), right_->follower_key(b));
}

std::string ProductOracle::predecessor_key(WordView w) const {
  auto [a, b] = split(w);
  return pair_key(left_->predecessor_key(a), right_->predecessor_key(b));
}

PeriodicAnswer ProductOracle::periodic(WordView w) const {
  auto [a, b] = split(w);
  auto l = left_->periodic(a);
  auto r = right_->periodic(b);
  return {both(l.membership, r.membership), l.exact && r.exact};
}

std::vector<long> symbol_weights(const ShiftSpec& spec, const Alphabet& alphabet) {
  if (const auto* p = std::get_if<ProductSpec>(&spec.family)) {
    (void)alphabet;
    auto wl = symbol_weights(*p->left, spec_alphabet(*p->left));
    auto wr = symbol_weights(*p->right, spec_alphabet(*p->right));
    std::vector<long> out;
    for (long a : wl)
      for (long b : wr) out.push_back(a + b);
    return out;
  }
  if (!alphabet.has_labels()) throw SpecError("sum block map needs integer symbol labels");
  return alphabet.labels();
}

// ---------------------------------------------------------------- factor

namespace {

void words_of_length(const LanguageOracle& oracle, std::size_t n, Word& prefix, std::vector<Word>& out,
                     std::size_t budget) {
  if (prefix.size() == n) {
    out.push_back(prefix);
    if (out.size() > budget) throw BudgetExceeded("factor window enumeration exceeded its budget");
    return;
  }
  for (Symbol a = 0; a < oracle.alphabet().size(); ++a) {
    prefix.push_back(a);
    if (!oracle.contains_extension(prefix).is_out()) words_of_length(oracle, n, prefix, out, budget);
    prefix.pop_back();
  }
}

bool numeric_less(const std::string& a, const std::string& b) {
  long x = 0, y = 0;
  auto ra = std::from_chars(a.data(), a.data() + a.size(), x);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), y);
  bool na = ra.ec == std::errc() && ra.ptr == a.data() + a.size();
  bool nb = rb.ec == std::errc() && rb.ptr == b.data() + b.size();
  if (na && nb) return x < y;
  if (na != nb) return na;
  return a < b;
}

}  // namespace

FactorOracle::FactorOracle(OraclePtr base, std::size_t radius, std::function<std::string(WordView)> window_map,
                           std::size_t budget)
    : base_(std::move(base)), radius_(radius), map_(std::move(window_map)) {
  std::vector<Word> windows;
  Word prefix;
  words_of_length(*base_, 2 * radius_ + 1, prefix, windows, budget);
  std::vector<std::pair<std::string, std::string>> images;
  std::set<std::string, bool (*)(const std::string&, const std::string&)> names(numeric_less);
  for (const auto& win : windows) {
    if (base_->contains(win).is_out()) continue;
    std::string image = map_(win);
    names.insert(image);
    images.emplace_back(word_key(win), image);
  }
  alphabet_ = Alphabet(std::vector<std::string>(names.begin(), names.end()));
  for (auto& [k, image] : images) window_image_[k] = alphabet_.index_of(image);
}

Symbol FactorOracle::image(WordView window) const {
  auto it = window_image_.find(word_key(window));
  if (it == window_image_.end()) throw InputError("window is not in the base language");
  return it->second;
}

// Search for a preimage z of length |w| + 2r, pruning on the base language
// and on the images already determined. Dead states (base follower class,
// last 2r symbols, position) are remembered.
Membership FactorOracle::contains(WordView w) const {
  for (Symbol s : w)
    if (s >= alphabet_.size()) return Membership::out();
  std::size_t span = 2 * radius_ + 1;
  std::size_t target = w.size() + 2 * radius_;
  if (w.empty()) return Membership::from_bool(!window_image_.empty());
  std::unordered_set<std::string> dead;
  const bool memo = base_->exact();
  bool unknown = false;
  std::size_t nodes = 0;
  Word z;
  auto state_key = [&](const Word& zz) {
    WordView v(zz);
    std::size_t tail = std::min(zz.size(), 2 * radius_);
    return std::to_string(zz.size()) + "|" + base_->follower_key(v) + "|" + word_key(v.last(tail));
  };
  std::function<bool()> dfs = [&]() -> bool {
    if (++nodes > (1u << 24)) throw BudgetExceeded("preimage search exceeded its budget");
    if (z.size() == target) return true;
    std::string key = state_key(z);
    if (memo && dead.count(key)) return false;
    for (Symbol a = 0; a < base_->alphabet().size(); ++a) {
      z.push_back(a);
      Membership m = base_->contains_extension(z);
      bool ok = !m.is_out();
      if (ok && z.size() >= span) {
        auto it = window_image_.find(word_key(WordView(z).last(span)));
        ok = it != window_image_.end() && it->second == w[z.size() - span];
      }
      if (ok) {
        if (m.is_unknown()) unknown = true;
        if (dfs()) {
          z.pop_back();
          return true;
        }
      }
      z.pop_back();
    }
    if (memo) dead.insert(key);
    return false;
  };
  bool found = dfs();
  // An Unknown anywhere on the successful path makes the answer Unknown; a
  // conservative approximation for inexact bases.
  if (found) return unknown && !base_->exact() ? Membership::unknown(target) : Membership::in();
  return unknown ? Membership::unknown(target) : Membership::out();
}

// ---------------------------------------------------------------- reflection

Membership ReflectedOracle::contains(WordView w) const { return base_->contains(reversed(w)); }
Membership ReflectedOracle::contains_extension(WordView w) const {
  return base_->contains_prepension(reversed(w));
}
Membership ReflectedOracle::contains_prepension(WordView w) const {
  return base_->contains_extension(reversed(w));
}
std::string ReflectedOracle::follower_key(WordView w) const { return base_->predecessor_key(reversed(w)); }
std::string ReflectedOracle::predecessor_key(WordView w) const { return base_->follower_key(reversed(w)); }
PeriodicAnswer ReflectedOracle::periodic(WordView w) const { return base_->periodic(reversed(w)); }

}  // namespace symdyn
