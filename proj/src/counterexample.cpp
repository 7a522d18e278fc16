#include "symdyn/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "symdyn/errors.hpp"
#include "symdyn/word.hpp"
#include "symdyn/language.hpp"

namespace symdyn {

const char* const kLargeNNote =
    "the entropy argument (h(X) = log N and two measures of maximal entropy) needs N > 2^17 + 4; "
    "this desk-scale instance does not meet that requirement, so only the structural claims are checked";

CounterexampleSpec build_counterexample(std::size_t n_symbols, std::size_t n_max, std::size_t radius) {
  CounterexampleSpec c;
  c.n_symbols = n_symbols;
  c.n_max = n_max;
  c.radius = radius;
  c.shift = std::make_shared<const Shift>(make_shift(specs::loglog(n_symbols, n_max, radius)));
  c.oracle = std::dynamic_pointer_cast<const LogLogOracle>(c.shift->oracle_ptr());
  if (!c.oracle) throw Error("double-log shift has an unexpected oracle");
  for (const auto& b : LogLogOracle::blocks_for_length(n_max)) {
    std::size_t len = b.end - b.start;
    auto set = build_spanning_set(n_symbols, len, radius);
    auto it = c.oracle->spanning_sets().find(len);
    if (it == c.oracle->spanning_sets().end() || it->second != set.words)
      throw SpecError("spanning set for block length " + std::to_string(len) + " is missing");
    c.spanning.push_back(std::move(set));
  }
  c.t_plus.resize(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n)
    for (auto& m : all_words(n_symbols, n)) {
      if (!c.oracle->in_t_plus(m).is_in()) continue;
      Word w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = c.oracle->from_magnitude(m[i], +1);
      c.t_plus[n].push_back(std::move(w));
    }
  c.note = kLargeNNote;
  return c;
}

Word negate_word(const LogLogOracle& oracle, WordView w) {
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = oracle.from_magnitude(oracle.magnitude(w[i]), -oracle.sign(w[i]));
  return out;
}

namespace {

// Largest distance from a word of [N]^n to the set, by multi-source BFS in
// the Hamming graph.
std::size_t covering_radius(std::size_t a, std::size_t n, const std::vector<Word>& set) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= a;
  auto encode = [&](WordView w) {
    std::size_t x = 0;
    for (Symbol s : w) x = x * a + s;
    return x;
  };
  std::vector<int> dist(total, -1);
  std::deque<std::size_t> queue;
  for (const auto& w : set) {
    auto x = encode(w);
    if (dist[x] < 0) {
      dist[x] = 0;
      queue.push_back(x);
    }
  }
  std::vector<std::size_t> place(n);
  place[n - 1] = 1;
  for (std::size_t i = n - 1; i > 0; --i) place[i - 1] = place[i] * a;
  int best = 0;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    best = std::max(best, dist[x]);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t digit = (x / place[i]) % a;
      for (std::size_t d = 0; d < a; ++d) {
        if (d == digit) continue;
        std::size_t y = x - digit * place[i] + d * place[i];
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  for (int d : dist)
    if (d < 0) return n + 1;  // unreachable only when the set is empty
  return static_cast<std::size_t>(best);
}

}  // namespace

CounterexampleAudit audit_counterexample(const CounterexampleSpec& spec, std::size_t entropy_n_max) {
  CounterexampleAudit a;
  a.n_symbols = spec.n_symbols;
  a.n_max = spec.n_max;
  a.note = spec.note;
  const auto& oracle = *spec.oracle;
  const std::size_t N = spec.n_symbols;
  const double dN = static_cast<double>(N);
  std::map<std::size_t, std::size_t> u_sizes;
  for (const auto& s : spec.spanning) u_sizes[s.length] = s.words.size();

  for (std::size_t n = 1; n <= spec.n_max; ++n) {
    CounterexampleRow r;
    r.n = n;
    const auto& tp = spec.t_plus[n];
    r.t_plus = tp.size();
    // T^- counted from the oracle over all negative words, not by negating T^+.
    for (const auto& m : all_words(N, n)) {
      Word neg(n), pos(n);
      for (std::size_t i = 0; i < n; ++i) {
        neg[i] = oracle.from_magnitude(m[i], -1);
        pos[i] = oracle.from_magnitude(m[i], +1);
      }
      Membership mt = oracle.in_t(neg);
      if (mt.is_unknown()) a.inconclusive = true;
      r.t_minus += mt.is_in();
      Membership ep = spec.shift->contains(pos), en = spec.shift->contains(neg);
      if (ep.is_unknown() || en.is_unknown()) a.inconclusive = true;
      if (!ep.is_in() || !en.is_in()) r.embed_ok = false;
    }
    r.bound0 = std::pow(dN, static_cast<double>(n)) / dN;
    r.bound0_ok = static_cast<double>(r.t_plus) <= r.bound0;
    double prod = std::pow(dN, static_cast<double>(n - 1));
    for (const auto& b : LogLogOracle::blocks_for_length(n)) {
      std::size_t len = b.end - b.start;
      prod *= static_cast<double>(u_sizes.at(len)) / std::pow(dN, static_cast<double>(len));
    }
    r.product_bound = prod;
    r.product_ok = static_cast<double>(r.t_plus) <= prod * (1 + 1e-12);
    r.spanning_radius_required = MistakeFunction::loglog()(n);
    std::vector<Word> mags;
    for (const auto& w : tp) {
      Word m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = oracle.magnitude(w[i]);
      mags.push_back(std::move(m));
    }
    r.spanning_radius_achieved = covering_radius(N, n, mags);
    a.spanning_ok = a.spanning_ok && r.spanning_radius_achieved <= r.spanning_radius_required;
    a.bound0_ok = a.bound0_ok && r.bound0_ok;
    a.embed_ok = a.embed_ok && r.embed_ok;
    a.sign_symmetric = a.sign_symmetric && r.t_plus == r.t_minus;
    a.alpha_sum += static_cast<double>(r.t_plus + r.t_minus) / std::pow(dN, static_cast<double>(n));
    a.rows.push_back(r);
  }
  for (std::size_t n = 2; n <= spec.n_max && a.prefix_closed; ++n)
    for (const auto& w : spec.t_plus[n]) {
      Word p(w.begin(), w.end() - 1);
      if (!std::binary_search(spec.t_plus[n - 1].begin(), spec.t_plus[n - 1].end(), p)) {
        a.prefix_closed = false;
        a.prefix_violation = w;
        break;
      }
    }
  a.alpha_below_one = a.alpha_sum < 1;
  a.log_n = std::log(dN);
  auto counts = count_language(*spec.shift, entropy_n_max);
  for (std::size_t n = 1; n <= entropy_n_max; ++n) {
    if (counts[n].approximate()) a.inconclusive = true;
    a.entropy.emplace_back(n, std::log(static_cast<double>(counts[n].certain)) / static_cast<double>(n));
  }
  return a;
}

std::optional<Word> ras_repair(const LogLogOracle& oracle, WordView w2) {
  if (w2.empty()) return std::nullopt;
  const int s = oracle.sign(w2[0]);
  std::size_t run = 1;
  while (run < w2.size() && oracle.sign(w2[run]) == s) ++run;
  Word m(run);
  for (std::size_t i = 0; i < run; ++i) m[i] = oracle.magnitude(w2[i]);
  m[0] = 0;
  for (const auto& b : LogLogOracle::blocks_for_length(run)) {
    std::size_t len = b.end - b.start;
    auto it = oracle.spanning_sets().find(len);
    if (it == oracle.spanning_sets().end()) return std::nullopt;
    WordView block = WordView(m).subspan(b.start, len);
    const Word* best = nullptr;
    std::size_t best_d = len + 1;
    for (const auto& u : it->second) {
      std::size_t d = *hamming_distance(u, block);
      if (d < best_d) {
        best_d = d;
        best = &u;
      }
    }
    if (!best) return std::nullopt;
    std::copy(best->begin(), best->end(), m.begin() + static_cast<std::ptrdiff_t>(b.start));
  }
  Word out(w2.begin(), w2.end());
  for (std::size_t i = 0; i < run; ++i) out[i] = oracle.from_magnitude(m[i], s);
  return out;
}

RepairHint ras_hint(std::shared_ptr<const LogLogOracle> oracle) {
  return [oracle](WordView, WordView perturbed) { return ras_repair(*oracle, perturbed); };
}

PropertyVerdict check_ras_loglog(const CounterexampleSpec& spec, Horizon horizon) {
  return check_ras(*spec.shift, MistakeFunction::loglog(), horizon, ras_hint(spec.oracle));
}

}  // namespace symdyn
