#include <map>
#include <unordered_map>
#include <unordered_set>

#include "symdyn/errors.hpp"
#include "symdyn/word.hpp"
#include "symdyn/language.hpp"
#include "symdyn/structure.hpp"
#include "symdyn/util.hpp"

namespace symdyn {

namespace {

struct ConnectorSearch {
  std::vector<std::optional<Word>> found;  // per target
  bool unknown = false;
  bool budget_hit = false;
};

// Breadth-first over connector lengths. States are follower classes of u w,
// each holding its lexicographically first w, so the first hit for a target
// is the shortest and then lexicographically first connector.
ConnectorSearch connect(const LanguageOracle& oracle, const Word& u, const std::vector<Word>& targets,
                        std::size_t gap_bound, std::size_t budget) {
  ConnectorSearch out;
  out.found.assign(targets.size(), std::nullopt);
  std::size_t remaining = targets.size();
  std::vector<Word> layer{Word{}};
  std::size_t spent = 0;
  const std::size_t a = oracle.alphabet().size();
  for (std::size_t gap = 0; gap <= gap_bound && remaining > 0 && !layer.empty(); ++gap) {
    for (const auto& w : layer) {
      Word uw = concat(u, w);
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (out.found[t]) continue;
        Membership m = oracle.contains(concat(uw, targets[t]));
        if (m.is_in()) {
          out.found[t] = w;
          --remaining;
        } else if (m.is_unknown()) {
          out.unknown = true;
        }
      }
    }
    if (remaining == 0 || gap == gap_bound) break;
    std::vector<Word> next;
    std::unordered_set<std::string> seen;
    for (const auto& w : layer) {
      Word uw = concat(u, w);
      for (Symbol s = 0; s < a; ++s) {
        uw.push_back(s);
        Membership m = oracle.contains_extension(uw);
        if (m.is_unknown()) out.unknown = true;
        if (!m.is_out() && seen.insert(oracle.follower_key(uw)).second) {
          Word nw = w;
          nw.push_back(s);
          next.push_back(std::move(nw));
        }
        uw.pop_back();
      }
    }
    spent += next.size();
    if (spent > budget) {
      out.budget_hit = true;
      break;
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<Word> representatives(const std::vector<Word>& words, bool follower, const LanguageOracle& oracle) {
  std::vector<Word> reps;
  std::unordered_set<std::string> seen;
  for (const auto& w : words)
    if (seen.insert(follower ? oracle.follower_key(w) : oracle.predecessor_key(w)).second) reps.push_back(w);
  return reps;
}

}  // namespace

IrreducibilityResult check_irreducible(const Shift& shift, std::size_t horizon, std::size_t gap_bound,
                                       std::size_t state_budget) {
  IrreducibilityResult out;
  auto& v = out.verdict;
  v.property = "irreducible(gap<=" + std::to_string(gap_bound) + ")";
  v.horizon = {horizon, horizon};
  if (horizon == 0) return out;
  const auto& oracle = shift.oracle();
  auto slices = enumerate_language_upto(shift, horizon);
  bool unknown = slices[horizon].approximate();
  bool budget_hit = false;

  // u w v in L implies u' w v' in L for a suffix u' of u and a prefix v' of
  // v, so maximal lengths decide Holds.
  auto us = representatives(slices[horizon].words, true, oracle);
  auto vs = representatives(slices[horizon].words, false, oracle);
  std::vector<ConnectorSearch> results(us.size());
  parallel_for(us.size(), [&](std::size_t i) { results[i] = connect(oracle, us[i], vs, gap_bound, state_budget); });
  bool failed = false;
  for (std::size_t i = 0; i < us.size(); ++i) {
    unknown = unknown || results[i].unknown;
    budget_hit = budget_hit || results[i].budget_hit;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      ++v.instances;
      if (results[i].found[j]) {
        out.connections.push_back({us[i], vs[j], *results[i].found[j]});
        out.max_gap = std::max(out.max_gap, results[i].found[j]->size());
      } else {
        failed = true;
      }
    }
  }
  if (!failed) return out;
  if (unknown || budget_hit) {
    v.status = PropertyVerdict::Status::Inconclusive;
    v.reason = budget_hit ? "connector search exceeded its state budget" : "membership unknown within the search horizon";
    return out;
  }

  // Canonical witness: first (u, v) in shortlex order without a connector.
  std::map<std::pair<std::string, std::string>, bool> memo;
  for (std::size_t lu = 1; lu <= horizon; ++lu)
    for (const auto& u : slices[lu].words) {
      std::string ku = oracle.follower_key(u);
      for (std::size_t lv = 1; lv <= horizon; ++lv)
        for (const auto& w : slices[lv].words) {
          auto key = std::make_pair(ku, oracle.predecessor_key(w));
          auto it = memo.find(key);
          bool fails;
          if (it != memo.end()) {
            fails = it->second;
          } else {
            fails = !connect(oracle, u, {w}, gap_bound, state_budget).found[0].has_value();
            memo.emplace(key, fails);
          }
          if (fails) {
            v.status = PropertyVerdict::Status::FailsWith;
            v.witness = {u, w};
            v.reason = "no connector of length <= " + std::to_string(gap_bound) + " joins " +
                       format_word(shift.alphabet(), u) + " to " + format_word(shift.alphabet(), w);
            return out;
          }
        }
    }
  throw Error("irreducibility check: failing class has no canonical witness");
}

}  // namespace symdyn
