#include "symdyn/properties.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "repair.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/language.hpp"
#include "symdyn/util.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

std::string to_string(PropertyVerdict::Status s) {
  switch (s) {
    case PropertyVerdict::Status::Holds: return "Holds";
    case PropertyVerdict::Status::FailsWith: return "FailsWith";
    case PropertyVerdict::Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

int exit_code(const PropertyVerdict& v) {
  switch (v.status) {
    case PropertyVerdict::Status::Holds: return 0;
    case PropertyVerdict::Status::FailsWith: return 1;
    case PropertyVerdict::Status::Inconclusive: return 2;
  }
  return 3;
}

namespace {

using detail::RepairSearch;
using detail::Side;

bool any_unknown(const std::vector<LanguageSlice>& slices) {
  for (const auto& s : slices)
    if (s.approximate()) return true;
  return false;
}

// One representative (the first in lexicographic order) per key class.
std::vector<Word> class_representatives(const std::vector<Word>& words,
                                        const std::function<std::string(WordView)>& key) {
  std::vector<Word> reps;
  std::unordered_set<std::string> seen;
  for (const auto& w : words)
    if (seen.insert(key(w)).second) reps.push_back(w);
  return reps;
}

// Shortlex walk over L_1..L_n.
template <class F>
bool for_each_shortlex(const std::vector<LanguageSlice>& slices, std::size_t n, F&& f) {
  for (std::size_t len = 1; len <= n && len < slices.size(); ++len)
    for (const auto& w : slices[len].words)
      if (!f(w)) return false;
  return true;
}

struct Position {
  std::size_t length = std::numeric_limits<std::size_t>::max();
  std::size_t index = 0;
  bool operator<(const Position& o) const {
    return length != o.length ? length < o.length : index < o.index;
  }
  bool valid() const { return length != std::numeric_limits<std::size_t>::max(); }
};

// Connector search for specification: is there u in A^gap with v u w in L?
Membership find_connector(const LanguageOracle& oracle, WordView v, WordView w, std::size_t gap) {
  Word buf(v.begin(), v.end());
  const std::size_t a = oracle.alphabet().size();
  Membership best = Membership::out();
  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == gap) {
      Word full = concat(buf, w);
      Membership m = oracle.contains(full);
      best = either(best, m);
      return m.is_in();
    }
    for (Symbol s = 0; s < a; ++s) {
      buf.push_back(s);
      Membership m = oracle.contains(buf);
      if (m.is_unknown()) best = either(best, m);
      if (!m.is_out() && self(self, depth + 1)) return true;
      buf.pop_back();
    }
    return false;
  };
  rec(rec, 0);
  return best;
}

std::string join_reason(const Alphabet& a, const std::vector<Word>& ws) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += ", ";
    out += format_word(a, ws[i]);
  }
  return out;
}

}  // namespace

PropertyVerdict check_specification(const Shift& shift, std::size_t gap, Horizon horizon) {
  PropertyVerdict v;
  v.property = "specification(tau=" + std::to_string(gap) + ")";
  v.horizon = horizon;
  if (horizon.left == 0 || horizon.right == 0) return v;
  const auto& oracle = shift.oracle();
  auto slices = enumerate_language_upto(shift, std::max(horizon.left, horizon.right));
  bool unknown = any_unknown(slices);

  // Extending v to the left or w to the right only makes connecting harder,
  // so maximal lengths decide Holds.
  auto left_reps = class_representatives(slices[horizon.left].words,
                                         [&](WordView w) { return oracle.follower_key(w); });
  auto right_reps = class_representatives(slices[horizon.right].words,
                                          [&](WordView w) { return oracle.predecessor_key(w); });
  std::vector<Membership> results(left_reps.size() * right_reps.size());
  parallel_for(left_reps.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < right_reps.size(); ++j)
      results[i * right_reps.size() + j] = find_connector(oracle, left_reps[i], right_reps[j], gap);
  });
  v.instances = results.size();
  bool failed = false;
  for (const auto& m : results) {
    if (m.is_out()) failed = true;
    if (m.is_unknown()) unknown = true;
  }
  if (!failed) {
    if (unknown) {
      v.status = PropertyVerdict::Status::Inconclusive;
      v.reason = "membership unknown within the search horizon";
    }
    return v;
  }

  // Canonical witness: first (v, w) in shortlex order.
  std::map<std::pair<std::string, std::string>, bool> memo;
  Word wv, ww;
  bool found = false;
  for_each_shortlex(slices, horizon.left, [&](const Word& a) {
    std::string ka = oracle.follower_key(a);
    for_each_shortlex(slices, horizon.right, [&](const Word& b) {
      auto key = std::make_pair(ka, oracle.predecessor_key(b));
      auto it = memo.find(key);
      bool fails = it != memo.end() ? it->second : find_connector(oracle, a, b, gap).is_out();
      memo.emplace(key, fails);
      if (fails) {
        wv = a;
        ww = b;
        found = true;
        return false;
      }
      return true;
    });
    return !found;
  });
  if (!found) throw Error("specification check: failing class has no canonical witness");
  v.status = PropertyVerdict::Status::FailsWith;
  v.witness = {wv, ww};
  v.reason = "no connector of length " + std::to_string(gap) + " joins " +
             join_reason(shift.alphabet(), v.witness);
  return v;
}

namespace {

struct ClassScan {
  Position first_failure;
  bool unknown = false;
  std::uint64_t instances = 0;
};

// LAS when the perturbed word is on the left, RAS when it is on the right.
PropertyVerdict check_one_sided(const Shift& shift, const MistakeFunction& g, Horizon horizon, Side side,
                                const RepairHint& hint) {
  PropertyVerdict v;
  v.property = std::string(side == Side::Left ? "LAS" : "RAS") + "(g=" + g.describe() + ")";
  v.horizon = horizon;
  const auto& oracle = shift.oracle();
  const std::size_t n_pert = side == Side::Left ? horizon.left : horizon.right;
  const std::size_t n_fix = side == Side::Left ? horizon.right : horizon.left;
  if (n_pert == 0 || n_fix == 0) return v;
  auto slices = enumerate_language_upto(shift, std::max(n_pert, n_fix));
  bool unknown = any_unknown(slices);

  auto fixed_key = [&](WordView w) {
    return side == Side::Left ? oracle.predecessor_key(w) : oracle.follower_key(w);
  };
  // A fixed word of maximal length is at least as hard as any of its
  // subwords on the far side, so the maximal length decides Holds.
  auto reps = class_representatives(slices[n_fix].words, fixed_key);

  auto scan = [&](const Word& fixed, Position stop_at) {
    ClassScan out;
    RepairSearch search(oracle, side, fixed);
    for (std::size_t len = 1; len <= n_pert; ++len) {
      const auto& level = slices[len].words;
      for (std::size_t idx = 0; idx < level.size(); ++idx) {
        Position here{len, idx};
        if (!(here < stop_at)) return out;
        std::optional<Word> proposal;
        if (hint) proposal = hint(fixed, level[idx]);
        auto r = search.run(level[idx], g(len), &level, proposal);
        ++out.instances;
        if (r.status.is_unknown()) out.unknown = true;
        if (r.status.is_out()) {
          out.first_failure = here;
          return out;
        }
      }
    }
    return out;
  };

  std::vector<ClassScan> scans(reps.size());
  parallel_for(reps.size(), [&](std::size_t i) { scans[i] = scan(reps[i], Position{}); });
  Position first;
  for (const auto& s : scans) {
    v.instances += s.instances;
    unknown = unknown || s.unknown;
    if (s.first_failure.valid() && s.first_failure < first) first = s.first_failure;
  }
  if (!first.valid()) {
    if (unknown) {
      v.status = PropertyVerdict::Status::Inconclusive;
      v.reason = "membership unknown within the search horizon";
    }
    return v;
  }

  std::optional<std::pair<Word, Word>> witness;  // (w1, w2)
  if (side == Side::Left) {
    // First failing left word, then its first failing right partner.
    const Word& x = slices[first.length].words[first.index];
    std::unordered_map<std::string, bool> memo;
    for_each_shortlex(slices, n_fix, [&](const Word& f) {
      std::string k = fixed_key(f);
      auto it = memo.find(k);
      bool fails;
      if (it != memo.end()) {
        fails = it->second;
      } else {
        RepairSearch search(oracle, side, f);
        std::optional<Word> proposal;
        if (hint) proposal = hint(f, x);
        fails = search.run(x, g(x.size()), &slices[x.size()].words, proposal).status.is_out();
        memo.emplace(k, fails);
      }
      if (fails) witness = std::make_pair(x, f);
      return !fails;
    });
  } else {
    // First failing left word in shortlex order, with its first failing partner.
    std::unordered_set<std::string> passed;
    for_each_shortlex(slices, n_fix, [&](const Word& f) {
      std::string k = fixed_key(f);
      if (passed.count(k)) return true;
      auto s = scan(f, Position{});
      if (s.first_failure.valid()) {
        witness = std::make_pair(f, slices[s.first_failure.length].words[s.first_failure.index]);
        return false;
      }
      passed.insert(k);
      return true;
    });
  }
  if (!witness) throw Error("almost specification check: failing class has no canonical witness");
  v.status = PropertyVerdict::Status::FailsWith;
  v.witness = {witness->first, witness->second};
  const Word& perturbed = side == Side::Left ? witness->first : witness->second;
  v.reason = "no change of at most " + std::to_string(g(perturbed.size())) + " letters in the " +
             (side == Side::Left ? "left" : "right") + " word joins " + join_reason(shift.alphabet(), v.witness);
  return v;
}

// k-fold concatenation with every segment perturbed within its own budget.
class AlmostSpecSearch {
 public:
  AlmostSpecSearch(const Shift& shift, const MistakeFunction& g, const std::vector<LanguageSlice>& slices,
                   std::size_t segments)
      : oracle_(shift.oracle()), g_(g), slices_(slices), memos_(segments) {}

  // Segments s[0..k-1]; memos_[j] stays valid while s[0..j] are unchanged.
  void invalidate_from(std::size_t j) {
    for (std::size_t i = j; i < memos_.size(); ++i) memos_[i].clear();
  }

  Membership solve(const std::vector<Word>& s) {
    const std::size_t k = s.size();
    return place(s, k - 1, Word{});
  }

  // Keys of the ball around w, with unknown members marked. Two first
  // segments of equal length with equal follower signatures answer every
  // tuple alike, and likewise last segments with equal predecessor
  // signatures.
  std::string signature(const Word& w, bool follower) {
    const auto& level = slices_[w.size()];
    std::vector<std::string> keys;
    for (const auto& x : candidates(w)) {
      std::string key = follower ? oracle_.follower_key(x) : oracle_.predecessor_key(x);
      if (std::binary_search(level.unknown.begin(), level.unknown.end(), x)) key += "\x1e?";
      keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::string out;
    for (const auto& key : keys) {
      out += key;
      out += '\x1f';
    }
    return out;
  }

 private:
  const std::vector<Word>& candidates(const Word& w) {
    auto it = balls_.find(w);
    if (it != balls_.end()) return it->second;
    std::vector<Word> out;
    std::size_t radius = std::min(g_(w.size()), w.size());
    const auto& level = slices_[w.size()];
    for (const auto& x : level.words)
      if (*hamming_distance(x, w) <= radius) out.push_back(x);
    for (const auto& x : level.unknown)
      if (*hamming_distance(x, w) <= radius) out.push_back(x);
    std::stable_sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
      return *hamming_distance(a, w) < *hamming_distance(b, w);
    });
    return balls_.emplace(w, std::move(out)).first->second;
  }

  // Replace segments 0..j given the already placed suffix.
  Membership place(const std::vector<Word>& s, std::size_t j, const Word& suffix) {
    std::string key;
    if (!suffix.empty()) {
      key = oracle_.predecessor_key(suffix);
      auto it = memos_[j].find(key);
      if (it != memos_[j].end()) return it->second;
    }
    Membership result = Membership::out();
    for (const auto& x : candidates(s[j])) {
      Word joined = concat(x, suffix);
      Membership m = oracle_.contains(joined);
      if (m.is_out()) continue;
      Membership rest = j == 0 ? Membership::in() : place(s, j - 1, joined);
      Membership combined = both(m, rest);
      result = either(result, combined);
      if (result.is_in()) break;
    }
    if (!suffix.empty()) memos_[j].emplace(key, result);
    return result;
  }

  const LanguageOracle& oracle_;
  const MistakeFunction& g_;
  const std::vector<LanguageSlice>& slices_;
  std::vector<std::unordered_map<std::string, Membership>> memos_;
  std::unordered_map<Word, std::vector<Word>, WordHash> balls_;
};

// First member of each signature class, in the order of the input.
std::vector<Word> signature_representatives(AlmostSpecSearch& search, const std::vector<Word>& words, bool follower) {
  std::vector<Word> reps;
  std::unordered_set<std::string> seen;
  for (const auto& w : words)
    if (seen.insert(search.signature(w, follower)).second) reps.push_back(w);
  return reps;
}

PropertyVerdict check_as_k(const Shift& shift, const MistakeFunction& g, Horizon horizon, std::size_t k) {
  if (k < 2) throw InputError("AS needs at least two segments");
  PropertyVerdict v;
  v.property = "AS(g=" + g.describe() + ",k=" + std::to_string(k) + ")";
  v.horizon = horizon;
  if (horizon.left < k - 1 || horizon.right == 0) return v;
  auto slices = enumerate_language_upto(shift, std::max(horizon.left, horizon.right));
  for (auto& s : slices) std::sort(s.unknown.begin(), s.unknown.end());
  bool unknown = any_unknown(slices);
  AlmostSpecSearch search(shift, g, slices, k);

  // Only the first member of each signature class is tried for the first
  // and the last segment. Classes keep the order of their first members, so
  // the first failing tuple is still the lexicographically first one.
  const std::size_t longest = std::max(horizon.left, horizon.right);
  std::vector<std::vector<Word>> first_reps(longest + 1), last_reps(longest + 1);
  for (std::size_t len = 1; len <= longest; ++len) {
    if (len <= horizon.left) first_reps[len] = signature_representatives(search, slices[len].words, true);
    if (len <= horizon.right) last_reps[len] = signature_representatives(search, slices[len].words, false);
  }

  // Tuples in lexicographic order of their shortlex-ordered components.
  std::vector<Word> segs(k);
  bool failed = false;
  auto rec = [&](auto&& self, std::size_t j, std::size_t budget) -> bool {
    if (j == k - 1) {
      for (std::size_t len = 1; len <= horizon.right; ++len)
        for (const auto& w : last_reps[len]) {
          segs[j] = w;
          search.invalidate_from(j);
          Membership m = search.solve(segs);
          ++v.instances;
          if (m.is_unknown()) unknown = true;
          if (m.is_out()) {
            failed = true;
            return false;
          }
        }
      return true;
    }
    std::size_t later = k - 2 - j;  // segments still to place before the last one
    for (std::size_t len = 1; len + later <= budget; ++len)
      for (const auto& w : j == 0 ? first_reps[len] : slices[len].words) {
        segs[j] = w;
        search.invalidate_from(j);
        if (!self(self, j + 1, budget - len)) return false;
      }
    return true;
  };
  rec(rec, 0, horizon.left);
  if (failed) {
    v.status = PropertyVerdict::Status::FailsWith;
    v.witness = segs;
    v.reason = "no admissible perturbation concatenates " + join_reason(shift.alphabet(), segs);
  } else if (unknown) {
    v.status = PropertyVerdict::Status::Inconclusive;
    v.reason = "membership unknown within the search horizon";
  }
  return v;
}

}  // namespace

PropertyVerdict check_almost_spec(const Shift& shift, const MistakeFunction& g, const AlmostSpecOptions& options) {
  switch (options.mode) {
    case AlmostSpecMode::LAS: return check_one_sided(shift, g, options.horizon, Side::Left, options.hint);
    case AlmostSpecMode::RAS: return check_one_sided(shift, g, options.horizon, Side::Right, options.hint);
    case AlmostSpecMode::AS: return check_as_k(shift, g, options.horizon, options.segments);
  }
  throw InputError("unknown almost specification mode");
}

PropertyVerdict check_las(const Shift& shift, const MistakeFunction& g, Horizon horizon) {
  return check_almost_spec(shift, g, {AlmostSpecMode::LAS, horizon, 3, {}});
}

PropertyVerdict check_ras(const Shift& shift, const MistakeFunction& g, Horizon horizon, RepairHint hint) {
  return check_almost_spec(shift, g, {AlmostSpecMode::RAS, horizon, 3, std::move(hint)});
}

PropertyVerdict check_as(const Shift& shift, const MistakeFunction& g, Horizon horizon, std::size_t segments) {
  return check_almost_spec(shift, g, {AlmostSpecMode::AS, horizon, segments, {}});
}

EstimateI estimate_i(const Shift& shift, Horizon horizon) {
  EstimateI out;
  if (horizon.left == 0 || horizon.right == 0) return out;
  const auto& oracle = shift.oracle();
  auto slices = enumerate_language_upto(shift, std::max(horizon.left, horizon.right));
  out.inconclusive = any_unknown(slices);

  std::vector<Word> ys, vs_all;
  for_each_shortlex(slices, horizon.left, [&](const Word& y) {
    ys.push_back(y);
    return true;
  });
  for_each_shortlex(slices, horizon.right, [&](const Word& w) {
    vs_all.push_back(w);
    return true;
  });
  // Shortlex-first member of each predecessor class.
  auto vs = class_representatives(vs_all, [&](WordView w) { return oracle.predecessor_key(w); });

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> table(vs.size(), std::vector<std::size_t>(ys.size(), 0));
  std::vector<char> unknown(vs.size(), 0);
  parallel_for(vs.size(), [&](std::size_t c) {
    RepairSearch search(oracle, Side::Left, vs[c]);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      auto r = search.run(ys[j], ys[j].size(), &slices[ys[j].size()].words);
      if (r.status.is_unknown()) unknown[c] = 1;
      table[c][j] = r.status.is_in() ? r.distance : kNone;
    }
  });
  bool found = false;
  for (std::size_t j = 0; j < ys.size(); ++j)
    for (std::size_t c = 0; c < vs.size(); ++c) {
      std::size_t d = table[c][j];
      if (d == kNone) {
        out.inconclusive = true;
        continue;
      }
      if (!found || d > out.i) {
        out.i = d;
        out.y = ys[j];
        out.v0 = vs[c];
        found = true;
      }
    }
  for (char u : unknown)
    if (u) out.inconclusive = true;
  return out;
}

}  // namespace symdyn
