#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/mistake_function.hpp"
#include "symdyn/shift.hpp"

namespace symdyn {

struct Horizon {
  std::size_t left = 0;
  std::size_t right = 0;
};

// Finite-horizon answer for a specification-type property. A Holds is
// evidence at the recorded horizon only.
struct PropertyVerdict {
  enum class Status { Holds, FailsWith, Inconclusive };
  Status status = Status::Holds;
  std::string property;
  Horizon horizon;
  std::vector<Word> witness;
  std::string reason;
  std::uint64_t instances = 0;

  bool holds() const { return status == Status::Holds; }
  bool fails() const { return status == Status::FailsWith; }
  bool inconclusive() const { return status == Status::Inconclusive; }
};

std::string to_string(PropertyVerdict::Status s);
// 0 Holds, 1 FailsWith, 2 Inconclusive.
int exit_code(const PropertyVerdict& v);

// B_m(w) ∩ L_{|w|}, lexicographic.
std::vector<Word> hamming_ball(const Shift& shift, WordView w, std::size_t m);

// Words at Hamming distance exactly d from w, lexicographic.
std::vector<Word> hamming_sphere(std::size_t alphabet_size, WordView w, std::size_t d);

struct MistakeResult {
  // Unset when no change of the perturbed word works (or only Unknown answers).
  std::optional<std::size_t> mistakes;
  Word repaired;  // lexicographically first repair at the minimum distance
  bool inconclusive = false;
};

// Smallest j with some w1' in B_j(w1) and w1' w2 in L. Throws InputError when w2 is not in L.
MistakeResult min_mistakes_left(const Shift& shift, WordView w1, WordView w2);
// Mirror image: smallest j with w1 w2' in L for some w2' in B_j(w2).
MistakeResult min_mistakes_right(const Shift& shift, WordView w1, WordView w2);

struct EstimateI {
  std::size_t i = 0;
  Word y, v0;  // canonical maximizing pair
  bool inconclusive = false;
};

// Maximum of min_mistakes_left over y in L_{<=left}, v in L_{<=right}; the
// first maximizing pair in (y, v) shortlex order.
EstimateI estimate_i(const Shift& shift, Horizon horizon);

PropertyVerdict check_specification(const Shift& shift, std::size_t gap, Horizon horizon);

enum class AlmostSpecMode { AS, LAS, RAS };

// Optional repair proposal for the perturbed word; the checker validates it.
using RepairHint = std::function<std::optional<Word>(WordView fixed, WordView perturbed)>;

struct AlmostSpecOptions {
  AlmostSpecMode mode = AlmostSpecMode::LAS;
  Horizon horizon{6, 6};
  // AS only: number of segments. The first segments - 1 words share the
  // left length budget, the last word has the right budget.
  std::size_t segments = 3;
  RepairHint hint;
};

PropertyVerdict check_almost_spec(const Shift& shift, const MistakeFunction& g, const AlmostSpecOptions& options);

// Convenience wrappers.
PropertyVerdict check_las(const Shift& shift, const MistakeFunction& g, Horizon horizon);
PropertyVerdict check_ras(const Shift& shift, const MistakeFunction& g, Horizon horizon, RepairHint hint = {});
PropertyVerdict check_as(const Shift& shift, const MistakeFunction& g, Horizon horizon, std::size_t segments = 3);

}  // namespace symdyn
