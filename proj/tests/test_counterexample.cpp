#include <doctest.h>

#include <algorithm>
#include <map>

#include "brute.hpp"
#include "symdyn/counterexample.hpp"
#include "symdyn/language.hpp"
#include "symdyn/mistake_function.hpp"
#include "symdyn/spanning.hpp"
#include "symdyn/word.hpp"

using namespace symdyn;

namespace {

// Magnitude words are 0-based (value v stored as v-1). Blocks for length n:
// 1-based [2^(2^i)+1, 2^(2^(i+1))] for i < floor(log2 log2 n).
bool t_plus_def(const Word& m, const std::map<std::size_t, std::vector<Word>>& u) {
  if (m.empty() || m[0] != 0) return false;
  std::size_t n = m.size();
  for (std::size_t lo = 2, hi = 4; hi <= n; lo = hi, hi = hi * hi) {
    Word block(m.begin() + static_cast<std::ptrdiff_t>(lo), m.begin() + static_cast<std::ptrdiff_t>(hi));
    const auto& set = u.at(hi - lo);
    if (!std::binary_search(set.begin(), set.end(), block)) return false;
  }
  return true;
}

// Can m be cut into T^+ words?
bool t_plus_concat(const Word& m, const std::map<std::size_t, std::vector<Word>>& u) {
  std::vector<bool> ok(m.size() + 1, false);
  ok[0] = true;
  for (std::size_t j = 1; j <= m.size(); ++j)
    for (std::size_t i = 0; i < j && !ok[j]; ++i)
      if (ok[i] && t_plus_def(Word(m.begin() + static_cast<std::ptrdiff_t>(i), m.begin() + static_cast<std::ptrdiff_t>(j)), u))
        ok[j] = true;
  return ok[m.size()];
}

// Membership in the coded shift from the run structure: the first sign run is
// a suffix of a generator (always possible), every later run is a
// concatenation of generators, the last one possibly cut short (T^+ is
// prefix-closed, so a cut generator is again a generator).
bool coded_member(const LogLogOracle& o, const Word& w, const std::map<std::size_t, std::vector<Word>>& u) {
  std::size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && o.sign(w[j]) == o.sign(w[i])) ++j;
    if (!first) {
      Word m;
      for (std::size_t p = i; p < j; ++p) m.push_back(o.magnitude(w[p]));
      if (!t_plus_concat(m, u)) return false;
    }
    first = false;
    i = j;
  }
  return true;
}

}  // namespace

TEST_CASE("T+ matches its definition") {
  for (std::size_t N : {2u, 3u, 4u}) {
    auto c = build_counterexample(N, 8);
    const auto& u = c.oracle->spanning_sets();
    for (std::size_t n = 1; n <= 8; ++n) {
      std::vector<Word> expect;
      for (const auto& m : brute::words(N, n))
        if (t_plus_def(m, u)) {
          Word w;
          for (Symbol s : m) w.push_back(c.oracle->from_magnitude(s, +1));
          expect.push_back(w);
        }
      std::sort(expect.begin(), expect.end());
      CHECK(c.t_plus[n] == expect);
    }
    // Below 4 only the first letter is constrained.
    CHECK(c.t_plus[3].size() == N * N);
    // With radius 2 a single word spans all of {1..N}^2, so |T+_4| = N.
    CHECK(u.at(2).size() == 1);
    CHECK(c.t_plus[4].size() == N);
  }
}

TEST_CASE("spanning sets cover exhaustively") {
  for (auto [k, len, r] : {std::tuple{2u, 4u, 1u}, std::tuple{3u, 4u, 1u}, std::tuple{4u, 2u, 2u}, std::tuple{3u, 5u, 2u}}) {
    auto s = build_spanning_set(k, len, r);
    CHECK(s.verified);
    CHECK(s.exhaustive);
    for (const auto& w : brute::words(k, len)) {
      std::size_t best = len + 1;
      for (const auto& x : s.words) best = std::min(best, brute::hamming(w, x));
      CHECK(best <= r);
      CHECK(distance_to_set(s.words, w) == best);
    }
  }
}

TEST_CASE("coded shift language agrees with the run characterization") {
  for (auto [N, n_max] : {std::pair{2u, 7u}, std::pair{3u, 4u}}) {
    auto c = build_counterexample(N, 8);
    const auto& u = c.oracle->spanning_sets();
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::size_t unknown = 0, mismatches = 0;
      for (const auto& w : brute::words(2 * N, n)) {
        auto got = c.shift->contains(w);
        if (got.is_unknown()) {
          ++unknown;
          continue;
        }
        if (got.is_in() != coded_member(*c.oracle, w, u)) ++mismatches;
      }
      CHECK_MESSAGE(mismatches == 0, "N=" << N << " n=" << n);
      CHECK(unknown == 0);
    }
  }
}

TEST_CASE("counterexample audit") {
  auto c = build_counterexample(4, 8);
  auto a = audit_counterexample(c, 4);
  CHECK(a.prefix_closed);
  CHECK(a.sign_symmetric);
  CHECK(a.spanning_ok);
  CHECK(a.bound0_ok);
  CHECK(a.embed_ok);
  CHECK(!a.inconclusive);
  CHECK(a.note == kLargeNNote);
  REQUIRE(a.rows.size() == 8);
  for (const auto& r : a.rows) {
    CHECK(r.t_plus == c.t_plus[r.n].size());
    CHECK(r.t_minus == r.t_plus);
    CHECK(r.spanning_radius_achieved <= r.spanning_radius_required);
    CHECK(r.spanning_radius_required == MistakeFunction::loglog()(r.n));
  }
  // Brute force of the spanning radius for n = 5: every positive word is
  // within 1 + 2 = 3 of T+_5 (first letter, two changes in the block).
  std::size_t worst = 0;
  for (const auto& m : brute::words(4, 5)) {
    std::size_t best = 99;
    for (const auto& t : c.t_plus[5]) {
      Word tm;
      for (Symbol s : t) tm.push_back(c.oracle->magnitude(s));
      best = std::min(best, brute::hamming(m, tm));
    }
    worst = std::max(worst, best);
  }
  CHECK(worst == a.rows[4].spanning_radius_achieved);
  CHECK(worst <= 3);
}

TEST_CASE("negation is an involution that swaps T+ and T-") {
  auto c = build_counterexample(3, 6);
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& w : c.t_plus[n]) {
      Word neg = negate_word(*c.oracle, w);
      CHECK(negate_word(*c.oracle, neg) == w);
      CHECK(c.oracle->in_t(neg).is_in());
      for (Symbol s : neg) CHECK(c.oracle->sign(s) == -1);
    }
}

TEST_CASE("RAS repair lands in T within the mistake budget") {
  auto c = build_counterexample(4, 8);
  const auto& u = c.oracle->spanning_sets();
  for (std::size_t n = 1; n <= 6; ++n)
    for (int sign : {+1, -1})
      for (const auto& m : brute::words(4, n)) {
        Word w;
        for (Symbol s : m) w.push_back(c.oracle->from_magnitude(s, sign));
        auto r = ras_repair(*c.oracle, w);
        REQUIRE(r);
        Word rm;
        for (Symbol s : *r) {
          CHECK(c.oracle->sign(s) == sign);
          rm.push_back(c.oracle->magnitude(s));
        }
        CHECK(t_plus_def(rm, u));
        CHECK(brute::hamming(*r, w) <= MistakeFunction::loglog()(n));
      }
  // Only the leading run is touched.
  Word mixed{c.oracle->from_magnitude(2, +1), c.oracle->from_magnitude(3, -1)};
  auto r = ras_repair(*c.oracle, mixed);
  REQUIRE(r);
  CHECK((*r)[0] == c.oracle->from_magnitude(0, +1));
  CHECK((*r)[1] == mixed[1]);
}

TEST_CASE("RAS with the repair hint holds on a small horizon") {
  auto c = build_counterexample(2, 8);
  auto v = check_ras_loglog(c, {4, 4});
  CHECK(v.holds());
  CHECK(v.instances > 0);
}
