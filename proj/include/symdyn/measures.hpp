#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "symdyn/entropy.hpp"
#include "symdyn/shift.hpp"

namespace symdyn {

using Rational = boost::rational<std::int64_t>;

// Evaluator w -> mu([w]). Counting kinds also give exact rationals.
class CylinderMeasure {
 public:
  enum class Kind { Parry, PeriodicOrbit, Empirical, Bernoulli };

  CylinderMeasure(Kind kind, std::string description, Alphabet alphabet, std::function<double(WordView)> eval,
                  std::function<std::optional<Rational>(WordView)> exact = {}, std::size_t depth = 0)
      : kind_(kind), description_(std::move(description)), alphabet_(std::move(alphabet)), eval_(std::move(eval)),
        exact_(std::move(exact)), depth_(depth) {}

  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  const Alphabet& alphabet() const { return alphabet_; }
  double operator()(WordView w) const { return eval_(w); }
  std::optional<Rational> exact(WordView w) const { return exact_ ? exact_(w) : std::nullopt; }
  bool has_exact() const { return static_cast<bool>(exact_); }
  // Largest cylinder length with a meaningful value; 0 means unlimited.
  std::size_t depth() const { return depth_; }

 private:
  Kind kind_;
  std::string description_;
  Alphabet alphabet_;
  std::function<double(WordView)> eval_;
  std::function<std::optional<Rational>(WordView)> exact_;
  std::size_t depth_;
};

std::string to_string(CylinderMeasure::Kind k);

struct ParryData {
  TransferMatrix matrix;
  std::vector<double> stationary;               // per state
  std::vector<std::vector<double>> transition;  // per state pair
  double markov_entropy = 0;
  double log_lambda = 0;
  CylinderMeasure measure;
};

// Throws ReducibleShift listing the components when the presentation is not irreducible.
ParryData sft_mme(const Shift& shift);

struct PeriodicPoints {
  std::size_t n = 0;
  std::vector<Word> points;  // x[0, n) of each x with sigma^n x = x, lexicographic
  bool exact = true;         // all periodicity answers were exact
  bool inconclusive = false; // some answer was Unknown
  std::optional<std::uint64_t> trace;  // SFT cross-check
};

PeriodicPoints periodic_points(const Shift& shift, std::size_t n);

// Uniform measure on Per_n. Throws when Per_n is empty.
CylinderMeasure periodic_orbit_measure(const Shift& shift, std::size_t n);
CylinderMeasure periodic_orbit_measure(const Alphabet& alphabet, const PeriodicPoints& points);

// Window frequencies over start positions 0..n-k of every member; defined for
// cylinders of length <= k. Requires k <= n - k.
CylinderMeasure empirical_measure(const Alphabet& alphabet, const std::vector<Word>& words, std::size_t k);

CylinderMeasure bernoulli_measure(const Alphabet& alphabet, std::vector<double> probabilities);

// (1/2) sum over A^k of |mu[w] - nu[w]|.
double total_variation(const CylinderMeasure& mu, const CylinderMeasure& nu, std::size_t k);

// Total variation between mu and sigma_* mu on cylinders of length k.
double invariance_defect(const CylinderMeasure& mu, std::size_t k);

struct ConsistencyCheck {
  double max_normalization_error = 0;  // |sum_{A^k} mu - 1|
  double max_consistency_error = 0;    // |mu[w] - sum_a mu[wa]|
  bool exact_ok = true;                // rational identities, when available
};

ConsistencyCheck check_consistency(const CylinderMeasure& mu, std::size_t max_depth);

}  // namespace symdyn
