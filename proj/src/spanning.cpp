#include "symdyn/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include "symdyn/errors.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

namespace {

using Index = std::uint32_t;

Word decode(Index x, std::size_t a, std::size_t n) {
  Word w(n);
  for (std::size_t i = n; i-- > 0;) {
    w[i] = static_cast<Symbol>(x % a);
    x /= static_cast<Index>(a);
  }
  return w;
}

// Every index within Hamming distance `radius` of x, x included.
void ball(Index x, std::size_t a, std::size_t n, std::size_t radius, const std::vector<Index>& place,
          std::vector<Index>& out) {
  out.clear();
  out.push_back(x);
  // Breadth-first over positions in increasing order avoids duplicates.
  struct Item {
    Index value;
    std::size_t next_pos;
    std::size_t changes;
  };
  std::vector<Item> stack{{x, 0, 0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.changes == radius) continue;
    for (std::size_t p = it.next_pos; p < n; ++p) {
      Index digit = (it.value / place[p]) % static_cast<Index>(a);
      for (Index d = 0; d < a; ++d) {
        if (d == digit) continue;
        Index y = it.value - digit * place[p] + d * place[p];
        out.push_back(y);
        stack.push_back({y, p + 1, it.changes + 1});
      }
    }
  }
}

}  // namespace

std::size_t distance_to_set(const std::vector<Word>& set, WordView w) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& u : set) {
    auto d = hamming_distance(u, w);
    if (d) best = std::min(best, *d);
  }
  return best;
}

SpanningSet build_spanning_set(std::size_t a, std::size_t n, std::size_t radius, std::uint64_t seed) {
  if (a == 0 || n == 0) throw InputError("spanning sets need a nonempty alphabet and n >= 1");
  SpanningSet result;
  result.alphabet_size = a;
  result.length = n;
  result.radius = radius;
  result.reference_bound = 16.0 / (static_cast<double>(n) * n) * std::pow(static_cast<double>(a), n);

  if (n <= radius) {
    result.words.push_back(Word(n, 0));
    result.verified = true;
    result.exhaustive = true;
    return result;
  }

  double total_d = std::pow(static_cast<double>(a), static_cast<double>(n));
  if (total_d > static_cast<double>(1u << 24))
    throw BudgetExceeded("spanning set over " + std::to_string(a) + "^" + std::to_string(n) +
                         " words is beyond the greedy construction budget");
  Index total = static_cast<Index>(total_d);
  std::vector<Index> place(n);
  {
    Index p = 1;
    for (std::size_t i = n; i-- > 0;) {
      place[i] = p;
      p *= static_cast<Index>(a);
    }
  }

  // gain[x] = number of still-uncovered words in the ball around x.
  std::vector<Index> buf;
  ball(0, a, n, radius, place, buf);
  const Index ball_size = static_cast<Index>(buf.size());
  std::vector<Index> gain(total, ball_size);
  std::vector<char> covered(total, 0);
  std::size_t remaining = total;
  std::vector<Index> inner;
  std::vector<Index> chosen;
  while (remaining > 0) {
    Index best = 0;
    for (Index x = 1; x < total; ++x)
      if (gain[x] > gain[best]) best = x;
    chosen.push_back(best);
    ball(best, a, n, radius, place, buf);
    for (Index y : buf) {
      if (covered[y]) continue;
      covered[y] = 1;
      --remaining;
      ball(y, a, n, radius, place, inner);
      for (Index z : inner) --gain[z];
    }
  }
  std::sort(chosen.begin(), chosen.end());
  for (Index x : chosen) result.words.push_back(decode(x, a, n));

  // Independent check: multi-source breadth-first distances over the Hamming graph.
  if (total <= 1000000) {
    std::vector<std::size_t> dist(total, std::numeric_limits<std::size_t>::max());
    std::deque<Index> queue;
    for (Index x : chosen) {
      dist[x] = 0;
      queue.push_back(x);
    }
    while (!queue.empty()) {
      Index x = queue.front();
      queue.pop_front();
      if (dist[x] == radius) continue;
      ball(x, a, n, 1, place, buf);
      for (Index y : buf)
        if (dist[y] == std::numeric_limits<std::size_t>::max()) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
    }
    for (Index x = 0; x < total; ++x)
      if (dist[x] > radius) throw Error("spanning set construction left a word uncovered");
    result.exhaustive = true;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, total - 1);
    result.sample_size = 10000;
    for (std::size_t i = 0; i < result.sample_size; ++i) {
      Word w = decode(pick(rng), a, n);
      if (distance_to_set(result.words, w) > radius)
        throw Error("spanning set construction left a sampled word uncovered");
    }
  }
  result.verified = true;
  return result;
}

}  // namespace symdyn
