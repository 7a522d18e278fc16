#include <unordered_set>

#include "symdyn/language.hpp"
#include "symdyn/word.hpp"
#include "symdyn/structure.hpp"

namespace symdyn {

std::size_t disjoint_occurrences(WordView u, WordView w) {
  if (u.empty()) return w.size() + 1;
  std::size_t count = 0, from = 0;
  while (auto p = find_subword(u, w, from)) {
    ++count;
    from = *p + u.size();
  }
  return count;
}

MeasureCenterApprox measure_center_approx(const Shift& shift, const MistakeFunction& g, std::size_t n_max,
                                          std::size_t search_horizon) {
  MeasureCenterApprox out;
  out.search_horizon = search_horizon;
  auto slices = enumerate_language_upto(shift, std::max(n_max, search_horizon));
  for (const auto& s : slices)
    if (s.approximate()) out.inconclusive = true;

  // Only subwords of some w can be kept, so scan every w once.
  std::vector<std::unordered_set<Word, WordHash>> kept(n_max + 1);
  for (std::size_t m = 1; m <= search_horizon; ++m) {
    const std::size_t need = g(m) + 1;
    for (const auto& w : slices[m].words)
      for (std::size_t n = 1; n <= n_max && n * need <= m; ++n)
        for (std::size_t start = 0; start + n <= m; ++start) {
          Word u(w.begin() + start, w.begin() + start + n);
          if (kept[n].count(u)) continue;
          if (disjoint_occurrences(u, w) >= need) kept[n].insert(std::move(u));
        }
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    MeasureCenterLevel level;
    level.n = n;
    for (const auto& u : slices[n].words) (kept[n].count(u) ? level.kept : level.flagged).push_back(u);
    out.levels.push_back(std::move(level));
  }
  return out;
}

}  // namespace symdyn
