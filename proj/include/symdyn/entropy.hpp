#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symdyn/shift.hpp"

namespace symdyn {

struct EntropyRow {
  std::size_t n = 0;
  std::uint64_t certain = 0;
  std::uint64_t possible = 0;
  double estimate = 0;      // (1/n) ln |L_n|, from the certain count
  double running_inf = 0;   // min of the estimates so far
  bool approximate = false;
};

struct EntropyReport {
  std::vector<EntropyRow> rows;  // n = 1..n_max
  std::optional<double> exact;   // ln lambda when the family admits it
  bool approximate = false;
  // ln|L_{a+b}| <= ln|L_a| + ln|L_b| for all a + b <= n_max.
  std::uint64_t subadditivity_checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> subadditivity_violations;
};

EntropyReport entropy_report(const Shift& shift, std::size_t n_max);

// Closed-form topological entropy where available: full shifts, SFTs and
// products of those.
std::optional<double> exact_entropy(const Shift& shift);

// Adjacency of the pruned de Bruijn presentation, with Perron data.
struct TransferMatrix {
  std::size_t order = 1;
  std::vector<Word> states;
  std::vector<std::vector<std::uint64_t>> adjacency;
  double lambda = 0;
  std::vector<double> left, right;  // left normalized so left . right = 1, right sums to 1
  double residual = 0;              // max of the left and right eigen-residuals (sup norm)
  std::size_t iterations = 0;

  std::size_t size() const { return states.size(); }
};

// Works for full shifts and SFTs; throws InputError otherwise.
TransferMatrix transfer_matrix(const Shift& shift);

// Power iteration on M + I from the all-ones vector.
void perron(TransferMatrix& m, double tol = 1e-12, std::size_t max_iter = 1000000);

// Strongly connected components with at least one edge, each as state indices.
std::vector<std::vector<std::size_t>> irreducible_components(const TransferMatrix& m);

// |L_n| for n = 0..n_max from path counts: prefixes of states below the
// order, 1^T M^(n-order) 1 from there. Throws on 64-bit overflow.
std::vector<std::uint64_t> path_counts(const TransferMatrix& m, std::size_t n_max);

// trace(M^n); the number of points of period n.
std::uint64_t trace_power(const TransferMatrix& m, std::size_t n);

}  // namespace symdyn
