#include "symdyn/measures.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

#include "symdyn/errors.hpp"
#include "symdyn/word.hpp"
#include "symdyn/language.hpp"

namespace symdyn {

std::string to_string(CylinderMeasure::Kind k) {
  switch (k) {
    case CylinderMeasure::Kind::Parry: return "parry";
    case CylinderMeasure::Kind::PeriodicOrbit: return "periodic_orbit";
    case CylinderMeasure::Kind::Empirical: return "empirical";
    case CylinderMeasure::Kind::Bernoulli: return "bernoulli";
  }
  return "?";
}

ParryData sft_mme(const Shift& shift) {
  auto m = transfer_matrix(shift);
  if (m.size() == 0) throw InputError("the SFT is empty");
  auto comps = irreducible_components(m);
  if (comps.size() != 1 || comps[0].size() != m.size()) {
    std::string msg = "the SFT presentation is reducible with " + std::to_string(comps.size()) + " components:";
    for (const auto& c : comps) {
      msg += " {";
      for (std::size_t k = 0; k < c.size(); ++k) msg += (k ? "," : "") + format_word(shift.alphabet(), m.states[c[k]]);
      msg += "}";
    }
    throw ReducibleShift(msg, comps);
  }
  perron(m);
  const std::size_t n = m.size();
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = m.left[i] * m.right[i];
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0));
  double h = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.adjacency[i][j]) {
        double q = m.right[j] / (m.lambda * m.right[i]);
        p[i][j] = static_cast<double>(m.adjacency[i][j]) * q;
        h -= pi[i] * static_cast<double>(m.adjacency[i][j]) * q * std::log(q);
      }

  auto index = std::make_shared<std::unordered_map<std::string, std::size_t>>();
  for (std::size_t i = 0; i < n; ++i) (*index)[word_key(m.states[i])] = i;
  const std::size_t k = m.order;
  auto states = m.states;
  auto eval = [pi, p, index, states, k](WordView w) -> double {
    if (w.empty()) return 1.0;
    if (w.size() < k) {
      double s = 0;
      for (std::size_t i = 0; i < states.size(); ++i)
        if (std::equal(w.begin(), w.end(), states[i].begin())) s += pi[i];
      return s;
    }
    auto it = index->find(word_key(w.subspan(0, k)));
    if (it == index->end()) return 0.0;
    std::size_t cur = it->second;
    double val = pi[cur];
    for (std::size_t t = k; t < w.size(); ++t) {
      auto jt = index->find(word_key(w.subspan(t - k + 1, k)));
      if (jt == index->end()) return 0.0;
      val *= p[cur][jt->second];
      if (val == 0) return 0.0;
      cur = jt->second;
    }
    return val;
  };
  ParryData out{m, pi, p, h, std::log(m.lambda),
                CylinderMeasure(CylinderMeasure::Kind::Parry, "parry", shift.alphabet(), eval)};
  return out;
}

PeriodicPoints periodic_points(const Shift& shift, std::size_t n) {
  if (n == 0) throw InputError("period must be positive");
  PeriodicPoints out;
  out.n = n;
  auto slice = enumerate_language(shift, n);
  if (slice.approximate()) out.inconclusive = true;
  for (const auto& w : slice.words) {
    auto ans = shift.oracle().periodic(w);
    if (!ans.exact) out.exact = false;
    if (ans.membership.is_unknown()) out.inconclusive = true;
    if (ans.membership.is_in()) out.points.push_back(w);
  }
  try {
    auto m = transfer_matrix(shift);
    out.trace = trace_power(m, n);
  } catch (const InputError&) {
  }
  return out;
}

CylinderMeasure periodic_orbit_measure(const Alphabet& alphabet, const PeriodicPoints& points) {
  if (points.points.empty()) throw InputError("no points of period " + std::to_string(points.n));
  auto pts = std::make_shared<std::vector<Word>>(points.points);
  auto count = [pts](WordView w) -> std::int64_t {
    std::int64_t c = 0;
    for (const auto& p : *pts) {
      bool ok = true;
      for (std::size_t i = 0; i < w.size() && ok; ++i) ok = w[i] == p[i % p.size()];
      c += ok;
    }
    return c;
  };
  std::int64_t total = static_cast<std::int64_t>(pts->size());
  auto exact = [count, total](WordView w) -> std::optional<Rational> { return Rational(count(w), total); };
  auto eval = [count, total](WordView w) -> double {
    return static_cast<double>(count(w)) / static_cast<double>(total);
  };
  return CylinderMeasure(CylinderMeasure::Kind::PeriodicOrbit, "periodic_orbit(n=" + std::to_string(points.n) + ")",
                         alphabet, eval, exact);
}

CylinderMeasure periodic_orbit_measure(const Shift& shift, std::size_t n) {
  return periodic_orbit_measure(shift.alphabet(), periodic_points(shift, n));
}

CylinderMeasure empirical_measure(const Alphabet& alphabet, const std::vector<Word>& words, std::size_t k) {
  if (words.empty()) throw InputError("empirical measure needs at least one word");
  const std::size_t n = words.front().size();
  for (const auto& w : words)
    if (w.size() != n) throw InputError("empirical measure needs words of one length");
  if (k == 0 || 2 * k > n) throw InputError("empirical measure needs 1 <= k <= n - k");
  auto counts = std::make_shared<std::unordered_map<Word, std::int64_t, WordHash>>();
  for (const auto& w : words)
    for (std::size_t i = 0; i + k <= n; ++i)
      for (std::size_t len = 1; len <= k; ++len) ++(*counts)[Word(w.begin() + i, w.begin() + i + len)];
  const std::int64_t total = static_cast<std::int64_t>(words.size()) * static_cast<std::int64_t>(n - k + 1);
  auto exact = [counts, total, k](WordView u) -> std::optional<Rational> {
    if (u.size() > k) throw InputError("cylinder longer than the empirical depth");
    if (u.empty()) return Rational(1);
    auto it = counts->find(Word(u.begin(), u.end()));
    return Rational(it == counts->end() ? 0 : it->second, total);
  };
  auto eval = [exact](WordView u) -> double { return boost::rational_cast<double>(*exact(u)); };
  return CylinderMeasure(CylinderMeasure::Kind::Empirical,
                         "empirical(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")", alphabet, eval, exact,
                         k);
}

CylinderMeasure bernoulli_measure(const Alphabet& alphabet, std::vector<double> probabilities) {
  if (probabilities.size() != alphabet.size()) throw InputError("one probability per symbol is required");
  double s = 0;
  for (double p : probabilities) {
    if (p < 0) throw InputError("probabilities must be nonnegative");
    s += p;
  }
  if (std::abs(s - 1) > 1e-12) throw InputError("probabilities must sum to 1");
  auto eval = [probabilities](WordView w) {
    double v = 1;
    for (Symbol x : w) v *= probabilities[x];
    return v;
  };
  return CylinderMeasure(CylinderMeasure::Kind::Bernoulli, "bernoulli", alphabet, eval);
}

double total_variation(const CylinderMeasure& mu, const CylinderMeasure& nu, std::size_t k) {
  double s = 0;
  for (const auto& w : all_words(mu.alphabet().size(), k)) s += std::abs(mu(w) - nu(w));
  return s / 2;
}

double invariance_defect(const CylinderMeasure& mu, std::size_t k) {
  const std::size_t a = mu.alphabet().size();
  double s = 0;
  for (const auto& w : all_words(a, k)) {
    double pushed = 0;
    Word aw(k + 1);
    std::copy(w.begin(), w.end(), aw.begin() + 1);
    for (Symbol x = 0; x < a; ++x) {
      aw[0] = x;
      pushed += mu(aw);
    }
    s += std::abs(mu(w) - pushed);
  }
  return s / 2;
}

ConsistencyCheck check_consistency(const CylinderMeasure& mu, std::size_t max_depth) {
  ConsistencyCheck c;
  const std::size_t a = mu.alphabet().size();
  for (std::size_t d = 1; d <= max_depth; ++d) {
    double total = 0;
    Rational exact_total(0);
    for (const auto& w : all_words(a, d)) {
      total += mu(w);
      if (mu.has_exact()) exact_total += *mu.exact(w);
    }
    c.max_normalization_error = std::max(c.max_normalization_error, std::abs(total - 1));
    if (mu.has_exact() && exact_total != Rational(1)) c.exact_ok = false;
    for (const auto& w : all_words(a, d - 1)) {
      double children = 0;
      Rational exact_children(0);
      Word wa = w;
      wa.push_back(0);
      for (Symbol x = 0; x < a; ++x) {
        wa.back() = x;
        children += mu(wa);
        if (mu.has_exact()) exact_children += *mu.exact(wa);
      }
      c.max_consistency_error = std::max(c.max_consistency_error, std::abs(mu(w) - children));
      if (mu.has_exact() && exact_children != *mu.exact(w)) c.exact_ok = false;
    }
  }
  return c;
}

}  // namespace symdyn
