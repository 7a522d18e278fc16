#include <algorithm>
#include <cmath>

#include "repair.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/properties.hpp"

namespace symdyn {

std::vector<Word> hamming_sphere(std::size_t a, WordView w, std::size_t d) {
  std::vector<Word> out;
  if (d > w.size()) return out;
  Word current(w.begin(), w.end());
  // Choose positions in increasing order, then replacement symbols.
  std::vector<std::size_t> positions;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (positions.size() == d) {
      out.push_back(current);
      return;
    }
    for (std::size_t p = start; p + (d - positions.size()) <= w.size(); ++p) {
      positions.push_back(p);
      for (Symbol s = 0; s < a; ++s) {
        if (s == w[p]) continue;
        current[p] = s;
        self(self, p + 1);
      }
      current[p] = w[p];
      positions.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> hamming_ball(const Shift& shift, WordView w, std::size_t m) {
  for (Symbol s : w)
    if (s >= shift.alphabet().size()) throw InputError("word uses a symbol outside the alphabet");
  std::vector<Word> out;
  for (std::size_t d = 0; d <= std::min(m, w.size()); ++d)
    for (auto& x : hamming_sphere(shift.alphabet().size(), w, d))
      if (shift.oracle().contains(x).is_in()) out.push_back(std::move(x));
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

Membership RepairSearch::test(const Word& candidate) {
  auto it = memo_.find(candidate);
  if (it != memo_.end()) return it->second;
  buffer_.clear();
  if (side_ == Side::Left) {
    buffer_.insert(buffer_.end(), candidate.begin(), candidate.end());
    buffer_.insert(buffer_.end(), fixed_.begin(), fixed_.end());
  } else {
    buffer_.insert(buffer_.end(), fixed_.begin(), fixed_.end());
    buffer_.insert(buffer_.end(), candidate.begin(), candidate.end());
  }
  Membership m = oracle_.contains(buffer_);
  if (memo_.size() > (1u << 20)) memo_.clear();
  memo_.emplace(candidate, m);
  return m;
}

namespace {

double sphere_size(std::size_t n, std::size_t d, std::size_t a) {
  double c = 1;
  for (std::size_t i = 0; i < d; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c * std::pow(static_cast<double>(a - 1), static_cast<double>(d));
}

}  // namespace

RepairOutcome RepairSearch::run(WordView x, std::size_t radius, const std::vector<Word>* level,
                                const std::optional<Word>& hint) {
  RepairOutcome result;
  bool unknown = false;
  std::size_t unknown_horizon = 0;
  auto consider = [&](const Word& cand, std::size_t d) -> bool {
    Membership m = test(cand);
    if (m.is_in()) {
      result.status = m;
      result.word = cand;
      result.distance = d;
      return true;
    }
    if (m.is_unknown()) {
      unknown = true;
      unknown_horizon = std::max(unknown_horizon, m.horizon);
    }
    return false;
  };
  Word base(x.begin(), x.end());
  if (consider(base, 0)) return result;
  if (hint && hint->size() == x.size()) {
    std::size_t d = *hamming_distance(*hint, x);
    if (d <= radius && consider(*hint, d)) return result;
  }
  std::size_t a = oracle_.alphabet().size();
  std::size_t limit = std::min(radius, x.size());
  for (std::size_t d = 1; d <= limit; ++d) {
    if (level && sphere_size(x.size(), d, a) > static_cast<double>(level->size())) {
      for (const auto& cand : *level)
        if (*hamming_distance(cand, x) == d && consider(cand, d)) return result;
    } else {
      for (const auto& cand : hamming_sphere(a, x, d))
        if (consider(cand, d)) return result;
    }
  }
  result.status = unknown ? Membership::unknown(unknown_horizon) : Membership::out();
  return result;
}

}  // namespace detail

namespace {

MistakeResult min_mistakes(const Shift& shift, WordView perturbed, WordView fixed, detail::Side side) {
  Membership fm = shift.contains(fixed);
  if (fm.is_out()) throw InputError("the fixed word is not in the language");
  for (Symbol s : perturbed)
    if (s >= shift.alphabet().size()) throw InputError("word uses a symbol outside the alphabet");
  detail::RepairSearch search(shift.oracle(), side, fixed);
  auto outcome = search.run(perturbed, perturbed.size(), nullptr);
  MistakeResult r;
  if (outcome.status.is_in()) {
    r.mistakes = outcome.distance;
    r.repaired = outcome.word;
  }
  r.inconclusive = outcome.status.is_unknown() || fm.is_unknown();
  return r;
}

}  // namespace

MistakeResult min_mistakes_left(const Shift& shift, WordView w1, WordView w2) {
  return min_mistakes(shift, w1, w2, detail::Side::Left);
}

MistakeResult min_mistakes_right(const Shift& shift, WordView w1, WordView w2) {
  return min_mistakes(shift, w2, w1, detail::Side::Right);
}

}  // namespace symdyn
