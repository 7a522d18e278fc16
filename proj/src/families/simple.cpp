#include <algorithm>
#include <boost/rational.hpp>
#include <numeric>

#include "symdyn/errors.hpp"
#include "symdyn/families.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

// ---------------------------------------------------------------- beta

namespace {

unsigned eventual_digit(const std::vector<unsigned>& pre, const std::vector<unsigned>& per,
                        std::size_t i) {
  if (i < pre.size()) return pre[i];
  return per[(i - pre.size()) % per.size()];
}

}  // namespace

bool beta_expansion_admissible(const std::vector<unsigned>& preperiod,
                               const std::vector<unsigned>& period) {
  if (period.empty()) return false;
  if (std::all_of(period.begin(), period.end(), [](unsigned d) { return d == 0; })) return false;
  unsigned lead = eventual_digit(preperiod, period, 0);
  if (lead == 0) return false;
  // Two eventually periodic sequences with period p and preperiods <= P that
  // agree on P + p digits agree forever.
  std::size_t span = preperiod.size() + period.size();
  for (std::size_t s = 1; s < span + period.size(); ++s) {
    for (std::size_t i = 0; i < span + period.size(); ++i) {
      unsigned a = eventual_digit(preperiod, period, s + i);
      unsigned b = eventual_digit(preperiod, period, i);
      if (a < b) break;
      if (a > b) return false;
    }
  }
  return true;
}

std::vector<unsigned> greedy_expansion_digits(long num, long den, std::size_t depth) {
  if (den <= 0 || num <= den) throw InputError("beta must be a rational greater than 1");
  using Q = boost::rational<long long>;
  Q beta(num, den);
  Q x(1);
  std::vector<unsigned> digits;
  for (std::size_t i = 0; i < depth && x.numerator() != 0; ++i) {
    x *= beta;
    long long d = x.numerator() / x.denominator();
    digits.push_back(static_cast<unsigned>(d));
    x -= d;
  }
  return digits;
}

BetaOracle::BetaOracle(const BetaSpec& spec) : preperiod_(spec.preperiod), period_(spec.period) {
  if (!beta_expansion_admissible(preperiod_, period_))
    throw SpecError("expansion is not an admissible quasi-greedy expansion of 1");
  alphabet_ = Alphabet::digits(digit(0) + 1);
}

unsigned BetaOracle::digit(std::size_t i) const { return eventual_digit(preperiod_, period_, i); }

Membership BetaOracle::contains(WordView w) const {
  for (std::size_t s = 0; s < w.size(); ++s) {
    for (std::size_t i = s; i < w.size(); ++i) {
      unsigned d = digit(i - s);
      if (w[i] < d) break;
      if (w[i] > d) return Membership::out();
    }
  }
  return Membership::in();
}

Membership BetaOracle::contains_extension(WordView w) const {
  if (w.empty()) return Membership::in();
  // Only suffixes that currently match the expansion prefix constrain the new symbol.
  std::size_t n = w.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool tight = true;
    for (std::size_t i = s; i + 1 < n; ++i)
      if (w[i] != digit(i - s)) {
        tight = false;
        break;
      }
    if (tight && w[n - 1] > digit(n - 1 - s)) return Membership::out();
  }
  return Membership::in();
}

std::string BetaOracle::follower_key(WordView w) const {
  // Lengths j of suffixes equal to the first j expansion digits.
  std::string key = "b";
  for (std::size_t s = 0; s < w.size(); ++s) {
    bool tight = true;
    for (std::size_t i = s; i < w.size(); ++i)
      if (w[i] != digit(i - s)) {
        tight = false;
        break;
      }
    if (tight) key += std::to_string(w.size() - s) + ",";
  }
  return key;
}

PeriodicAnswer BetaOracle::periodic(WordView w) const {
  if (w.empty()) return {Membership::out(), true};
  std::size_t horizon = preperiod_.size() + w.size() * period_.size() + w.size() + period_.size();
  for (std::size_t s = 0; s < w.size(); ++s) {
    for (std::size_t i = 0; i < horizon; ++i) {
      unsigned a = w[(s + i) % w.size()];
      unsigned d = digit(i);
      if (a < d) break;
      if (a > d) return {Membership::out(), true};
    }
  }
  return {Membership::in(), true};
}

// ---------------------------------------------------------------- S-gap

SGapOracle::SGapOracle(SGapSpec spec) : spec_(std::move(spec)) {
  std::sort(spec_.gaps.begin(), spec_.gaps.end());
  spec_.gaps.erase(std::unique(spec_.gaps.begin(), spec_.gaps.end()), spec_.gaps.end());
  if (spec_.gaps.empty() && !spec_.tail_start) throw SpecError("gap set S must be nonempty");
  if (spec_.tail_start && spec_.tail_step == 0) throw SpecError("gap tail step must be positive");
}

bool SGapOracle::allowed_gap(std::size_t g) const {
  if (std::binary_search(spec_.gaps.begin(), spec_.gaps.end(), g)) return true;
  return spec_.tail_start && g >= *spec_.tail_start && (g - *spec_.tail_start) % spec_.tail_step == 0;
}

std::size_t SGapOracle::max_gap() const { return spec_.gaps.empty() ? 0 : spec_.gaps.back(); }

Membership SGapOracle::contains(WordView w) const {
  for (Symbol s : w)
    if (s > 1) return Membership::out();
  auto boundary_ok = [&](std::size_t run) { return infinite() || run <= max_gap(); };
  std::size_t first = w.size();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == 1) {
      first = i;
      break;
    }
  if (first == w.size()) return Membership::from_bool(boundary_ok(w.size()));
  if (!boundary_ok(first)) return Membership::out();
  std::size_t last = first;
  for (std::size_t i = first + 1; i < w.size(); ++i)
    if (w[i] == 1) {
      if (!allowed_gap(i - last - 1)) return Membership::out();
      last = i;
    }
  return Membership::from_bool(boundary_ok(w.size() - 1 - last));
}

std::string SGapOracle::follower_key(WordView w) const {
  std::size_t trailing = 0;
  while (trailing < w.size() && w[w.size() - 1 - trailing] == 0) ++trailing;
  return (trailing == w.size() ? "z" : "o") + std::to_string(trailing);
}

std::string SGapOracle::predecessor_key(WordView w) const {
  std::size_t leading = 0;
  while (leading < w.size() && w[leading] == 0) ++leading;
  return (leading == w.size() ? "z" : "o") + std::to_string(leading);
}

PeriodicAnswer SGapOracle::periodic(WordView w) const {
  if (w.empty()) return {Membership::out(), true};
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == 1) ones.push_back(i);
  if (ones.empty()) return {Membership::from_bool(infinite()), true};
  for (std::size_t j = 0; j < ones.size(); ++j) {
    std::size_t next = j + 1 < ones.size() ? ones[j + 1] : ones[0] + w.size();
    if (!allowed_gap(next - ones[j] - 1)) return {Membership::out(), true};
  }
  return {Membership::in(), true};
}

// ---------------------------------------------------------------- bounded density

Membership BoundedDensityOracle::contains(WordView w) const {
  for (std::size_t end = 1; end <= w.size(); ++end) {
    std::size_t ones = 0;
    for (std::size_t len = 1; len <= end; ++len) {
      Symbol s = w[end - len];
      if (s > 1) return Membership::out();
      ones += s;
      if (ones > g_(len)) return Membership::out();
    }
  }
  return Membership::in();
}

Membership BoundedDensityOracle::contains_extension(WordView w) const {
  std::size_t ones = 0;
  for (std::size_t len = 1; len <= w.size(); ++len) {
    Symbol s = w[w.size() - len];
    if (s > 1) return Membership::out();
    ones += s;
    if (ones > g_(len)) return Membership::out();
  }
  return Membership::in();
}

Membership BoundedDensityOracle::contains_prepension(WordView w) const {
  std::size_t ones = 0;
  for (std::size_t len = 1; len <= w.size(); ++len) {
    Symbol s = w[len - 1];
    if (s > 1) return Membership::out();
    ones += s;
    if (ones > g_(len)) return Membership::out();
  }
  return Membership::in();
}

// A window starting inside a run of leading zeros is longer than the window
// starting at the first 1 and holds the same number of ones, so leading zeros
// never constrain an extension.
std::string BoundedDensityOracle::follower_key(WordView w) const {
  std::size_t b = 0;
  while (b < w.size() && w[b] == 0) ++b;
  return "d" + word_key(w.subspan(b));
}

std::string BoundedDensityOracle::predecessor_key(WordView w) const {
  std::size_t e = w.size();
  while (e > 0 && w[e - 1] == 0) --e;
  return "d" + word_key(w.first(e));
}

// g is sublinear, so a periodic point carrying any 1 eventually has a window
// over budget.
PeriodicAnswer BoundedDensityOracle::periodic(WordView w) const {
  if (w.empty()) return {Membership::out(), true};
  return {Membership::from_bool(count_symbol(w, 0) == w.size()), true};
}

// ---------------------------------------------------------------- at most one 1

Membership AtMostOneOneOracle::contains(WordView w) const {
  std::size_t ones = 0;
  for (Symbol s : w) {
    if (s > 1) return Membership::out();
    ones += s;
  }
  return Membership::from_bool(ones <= 1);
}

std::string AtMostOneOneOracle::follower_key(WordView w) const {
  return count_symbol(w, 1) ? "1" : "0";
}

std::string AtMostOneOneOracle::predecessor_key(WordView w) const {
  return count_symbol(w, 1) ? "1" : "0";
}

PeriodicAnswer AtMostOneOneOracle::periodic(WordView w) const {
  if (w.empty()) return {Membership::out(), true};
  return {Membership::from_bool(count_symbol(w, 1) == 0), true};
}

}  // namespace symdyn
