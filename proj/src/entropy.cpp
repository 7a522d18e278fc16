#include "symdyn/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "symdyn/errors.hpp"
#include "symdyn/families.hpp"
#include "symdyn/language.hpp"

namespace symdyn {

namespace {

double log_count(std::uint64_t c) {
  return c == 0 ? -std::numeric_limits<double>::infinity() : std::log(static_cast<double>(c));
}

}  // namespace

EntropyReport entropy_report(const Shift& shift, std::size_t n_max) {
  EntropyReport rep;
  auto counts = count_language(shift, n_max);
  double inf = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= n_max; ++n) {
    EntropyRow r;
    r.n = n;
    r.certain = counts[n].certain;
    r.possible = counts[n].possible;
    r.approximate = counts[n].approximate();
    r.estimate = log_count(r.certain) / static_cast<double>(n);
    inf = std::min(inf, r.estimate);
    r.running_inf = inf;
    rep.approximate = rep.approximate || r.approximate;
    rep.rows.push_back(r);
  }
  for (std::size_t a = 1; a < n_max; ++a)
    for (std::size_t b = a; a + b <= n_max; ++b) {
      ++rep.subadditivity_checked;
      unsigned __int128 lhs = counts[a + b].certain;
      unsigned __int128 rhs = static_cast<unsigned __int128>(counts[a].certain) * counts[b].certain;
      if (lhs > rhs) rep.subadditivity_violations.emplace_back(a, b);
    }
  rep.exact = exact_entropy(shift);
  return rep;
}

std::optional<double> exact_entropy(const Shift& shift) {
  const ShiftSpec* spec = shift.spec();
  if (!spec) return std::nullopt;
  if (auto* f = std::get_if<FullShiftSpec>(&spec->family))
    return std::log(static_cast<double>(f->alphabet.size()));
  if (std::holds_alternative<SftSpec>(spec->family)) {
    auto m = transfer_matrix(shift);
    if (m.size() == 0) return std::nullopt;
    perron(m);
    return std::log(m.lambda);
  }
  if (auto* p = std::get_if<ProductSpec>(&spec->family)) {
    auto l = exact_entropy(make_shift(p->left));
    auto r = exact_entropy(make_shift(p->right));
    if (l && r) return *l + *r;
  }
  return std::nullopt;
}

TransferMatrix transfer_matrix(const Shift& shift) {
  TransferMatrix m;
  const auto& oracle = shift.oracle();
  if (auto* sft = dynamic_cast<const SftOracle*>(&oracle)) {
    const auto& g = sft->graph();
    m.order = g.order;
    m.states = g.vertices;
    m.adjacency.assign(m.states.size(), std::vector<std::uint64_t>(m.states.size(), 0));
    for (std::size_t i = 0; i < g.successors.size(); ++i)
      for (std::size_t j : g.successors[i]) ++m.adjacency[i][j];
    return m;
  }
  if (dynamic_cast<const FullOracle*>(&oracle)) {
    const std::size_t a = oracle.alphabet().size();
    m.order = 1;
    for (Symbol s = 0; s < a; ++s) m.states.push_back(Word{s});
    m.adjacency.assign(a, std::vector<std::uint64_t>(a, 1));
    return m;
  }
  throw InputError("transfer matrices are available for full shifts and SFTs only");
}

namespace {

// One power-iteration run on (M + I) or its transpose; returns the eigenvalue of M.
double power_iterate(const TransferMatrix& m, bool transpose, std::vector<double>& vec, double tol,
                     std::size_t max_iter, std::size_t& iterations) {
  const std::size_t n = m.size();
  vec.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  double lambda = 0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = vec[i];
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t a = transpose ? m.adjacency[j][i] : m.adjacency[i][j];
        if (a) s += static_cast<double>(a) * vec[j];
      }
      next[i] = s;
    }
    double total = 0;
    for (double x : next) total += x;
    lambda = total - 1.0;  // vec sums to 1
    double diff = 0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= total;
      diff = std::max(diff, std::abs(next[i] - vec[i]));
    }
    vec.swap(next);
    iterations = std::max(iterations, it + 1);
    if (diff < tol) break;
  }
  return lambda;
}

double residual(const TransferMatrix& m, bool transpose, const std::vector<double>& vec, double lambda) {
  double r = 0, scale = 0;
  for (double x : vec) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < m.size(); ++j)
      s += static_cast<double>(transpose ? m.adjacency[j][i] : m.adjacency[i][j]) * vec[j];
    r = std::max(r, std::abs(s - lambda * vec[i]));
  }
  return scale > 0 ? r / scale : r;
}

}  // namespace

void perron(TransferMatrix& m, double tol, std::size_t max_iter) {
  if (m.size() == 0) {
    m.lambda = 0;
    return;
  }
  m.iterations = 0;
  m.lambda = power_iterate(m, false, m.right, tol, max_iter, m.iterations);
  double lambda_left = power_iterate(m, true, m.left, tol, max_iter, m.iterations);
  (void)lambda_left;
  double dot = 0;
  for (std::size_t i = 0; i < m.size(); ++i) dot += m.left[i] * m.right[i];
  if (dot > 0)
    for (double& x : m.left) x /= dot;
  m.residual = std::max(residual(m, false, m.right, m.lambda), residual(m, true, m.left, m.lambda));
}

std::vector<std::vector<std::size_t>> irreducible_components(const TransferMatrix& m) {
  // Tarjan, iterative enough for the small graphs used here.
  const std::size_t n = m.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (std::size_t w = 0; w < n; ++w) {
      if (!m.adjacency[v][w]) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != v);
      bool has_edge = comp.size() > 1 || m.adjacency[v][v] > 0;
      if (has_edge) {
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  std::sort(comps.begin(), comps.end());
  return comps;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw BudgetExceeded("path count overflows 64 bits");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw BudgetExceeded("path count overflows 64 bits");
  return r;
}

}  // namespace

std::vector<std::uint64_t> path_counts(const TransferMatrix& m, std::size_t n_max) {
  std::vector<std::uint64_t> out(n_max + 1, 0);
  if (m.size() == 0) {
    out[0] = 1;
    return out;
  }
  for (std::size_t n = 0; n <= std::min(n_max, m.order - 1); ++n) {
    std::set<Word> prefixes;
    for (const auto& s : m.states) prefixes.insert(Word(s.begin(), s.begin() + n));
    out[n] = prefixes.size();
  }
  std::vector<std::uint64_t> v(m.size(), 1);  // paths ending at each state
  for (std::size_t n = m.order; n <= n_max; ++n) {
    std::uint64_t total = 0;
    for (auto x : v) total = checked_add(total, x);
    out[n] = total;
    std::vector<std::uint64_t> next(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m.adjacency[i][j]) next[j] = checked_add(next[j], checked_mul(v[i], m.adjacency[i][j]));
    v.swap(next);
  }
  return out;
}

std::uint64_t trace_power(const TransferMatrix& m, std::size_t n) {
  const std::size_t k = m.size();
  std::uint64_t trace = 0;
  // Row i of M^n by repeated vector products; avoids a dense matrix power.
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::uint64_t> row(k, 0);
    row[i] = 1;
    for (std::size_t step = 0; step < n; ++step) {
      std::vector<std::uint64_t> next(k, 0);
      for (std::size_t a = 0; a < k; ++a)
        if (row[a])
          for (std::size_t b = 0; b < k; ++b)
            if (m.adjacency[a][b]) next[b] = checked_add(next[b], checked_mul(row[a], m.adjacency[a][b]));
      row.swap(next);
    }
    trace = checked_add(trace, row[i]);
  }
  return trace;
}

}  // namespace symdyn
