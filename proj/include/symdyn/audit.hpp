#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symdyn/measures.hpp"
#include "symdyn/shift.hpp"

namespace symdyn {

struct UpperBoundRow {
  std::size_t n = 0;
  std::uint64_t count = 0;
  double log_bound = 0;  // ln(|A|^{2m} n^{2m} e^{nh})
  double bound = 0;      // exp(log_bound), may be inf
  bool pass = true;
};

struct SuffixRow {
  std::size_t n = 0;
  std::uint64_t count = 0;  // |L_n ∩ L w|
  double ratio = 0;         // count / (n^{-1/2} e^{nh})
};

struct BoundAudit {
  std::size_t m = 0;
  double h = 0;
  bool h_exact = false;
  bool approximate = false;  // counts were approximate
  std::vector<UpperBoundRow> upper;
  std::size_t violations = 0;
  std::optional<Word> w;
  std::vector<SuffixRow> suffix;
  std::optional<double> epsilon;  // min ratio over the sweep
  std::optional<double> q1;       // Gibbs constant fit
  std::size_t q1_depth = 0;
};

// Counts words with |A|^{2m} n^{2m} e^{nh} in the log domain, with a 1e-9
// relative slack for rounding. Suffix counts and the epsilon fit run when w
// is given.
BoundAudit bound_audit(const Shift& shift, std::size_t m, double h, bool h_exact, std::size_t n_max,
                       std::optional<Word> w = std::nullopt);

// Smallest Q1 with mu([w]) <= Q1 e^{-|w| h} over w in L_1..L_depth.
double fit_gibbs_q1(const Shift& shift, const CylinderMeasure& mu, double h, std::size_t depth);

}  // namespace symdyn
