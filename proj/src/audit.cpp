#include "symdyn/audit.hpp"

#include <cmath>
#include <limits>

#include "symdyn/errors.hpp"
#include "symdyn/language.hpp"

namespace symdyn {

BoundAudit bound_audit(const Shift& shift, std::size_t m, double h, bool h_exact, std::size_t n_max,
                       std::optional<Word> w) {
  BoundAudit a;
  a.m = m;
  a.h = h;
  a.h_exact = h_exact;
  a.w = w;
  auto counts = count_language(shift, n_max);
  const double log_a = std::log(static_cast<double>(shift.alphabet().size()));
  for (std::size_t n = 1; n <= n_max; ++n) {
    UpperBoundRow r;
    r.n = n;
    r.count = counts[n].certain;
    a.approximate = a.approximate || counts[n].approximate();
    const double dn = static_cast<double>(n);
    r.log_bound = 2.0 * static_cast<double>(m) * (log_a + std::log(dn)) + dn * h;
    r.bound = std::exp(r.log_bound);
    double log_count = r.count == 0 ? -std::numeric_limits<double>::infinity()
                                    : std::log(static_cast<double>(r.count));
    r.pass = log_count <= r.log_bound + 1e-9 * std::max(1.0, std::abs(r.log_bound));
    if (!r.pass) ++a.violations;
    a.upper.push_back(r);
  }
  if (w) {
    // One depth-first pass counts the words of every length ending in w.
    std::vector<std::uint64_t> ending(n_max + 1, 0);
    const auto& oracle = shift.oracle();
    const std::size_t k = shift.alphabet().size();
    Word x;
    auto rec = [&](auto&& self) -> void {
      if (x.size() >= w->size() &&
          std::equal(w->begin(), w->end(), x.end() - static_cast<std::ptrdiff_t>(w->size())))
        ++ending[x.size()];
      if (x.size() == n_max) return;
      for (Symbol s = 0; s < k; ++s) {
        x.push_back(s);
        if (oracle.contains_extension(x).is_in()) self(self);
        x.pop_back();
      }
    };
    rec(rec);
    for (std::size_t n = std::max<std::size_t>(1, w->size()); n <= n_max; ++n) {
      SuffixRow r;
      r.n = n;
      r.count = ending[n];
      const double dn = static_cast<double>(n);
      r.ratio = static_cast<double>(r.count) * std::sqrt(dn) * std::exp(-dn * h);
      a.suffix.push_back(r);
      a.epsilon = a.epsilon ? std::min(*a.epsilon, r.ratio) : r.ratio;
    }
  }
  return a;
}

double fit_gibbs_q1(const Shift& shift, const CylinderMeasure& mu, double h, std::size_t depth) {
  auto slices = enumerate_language_upto(shift, depth);
  double q = 0;
  for (std::size_t n = 1; n <= depth; ++n)
    for (const auto& w : slices[n].words) q = std::max(q, mu(w) * std::exp(static_cast<double>(n) * h));
  return q;
}

}  // namespace symdyn
