#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/families.hpp"
#include "symdyn/properties.hpp"
#include "symdyn/shift.hpp"
#include "symdyn/spanning.hpp"

namespace symdyn {

// The coded shift generated by T^+ ∪ T^- over {-N..-1, 1..N}.
struct CounterexampleSpec {
  std::size_t n_symbols = 4;  // N
  std::size_t n_max = 8;
  std::size_t radius = 2;     // spanning radius of each U block
  std::shared_ptr<const Shift> shift;
  std::shared_ptr<const LogLogOracle> oracle;
  std::vector<SpanningSet> spanning;          // one per block length needed up to n_max
  std::vector<std::vector<Word>> t_plus;      // [n] = T^+_n in signed symbols, lexicographic; n = 0..n_max
  std::string note;
};

// The conclusion that X carries two measures of maximal entropy needs
// N > 2^17 + 4; desk-scale N does not meet it and every report says so.
extern const char* const kLargeNNote;

CounterexampleSpec build_counterexample(std::size_t n_symbols, std::size_t n_max, std::size_t radius = 2);

// -w for a word over the signed alphabet.
Word negate_word(const LogLogOracle& oracle, WordView w);

struct CounterexampleRow {
  std::size_t n = 0;
  std::uint64_t t_plus = 0, t_minus = 0;
  double bound0 = 0;         // N^n / N
  double product_bound = 0;  // N^(n-1) * prod |U| / N^len over the blocks
  bool bound0_ok = true;
  bool product_ok = true;
  std::size_t spanning_radius_required = 0;  // 1 + 2 floor(log2 log2 n), 1 below 4
  std::size_t spanning_radius_achieved = 0;  // max over constant-sign words of the distance to T_n
  bool embed_ok = true;                      // both one-sign full shifts have L_n inside L_n(X)
};

struct CounterexampleAudit {
  std::size_t n_symbols = 0, n_max = 0;
  std::vector<CounterexampleRow> rows;  // n = 1..n_max
  bool prefix_closed = true;
  std::optional<Word> prefix_violation;
  bool sign_symmetric = true;
  bool spanning_ok = true;
  bool bound0_ok = true;
  bool embed_ok = true;
  bool inconclusive = false;  // some membership answer was Unknown
  double alpha_sum = 0;       // sum_{j <= n_max} |T_j| / N^j
  bool alpha_below_one = false;
  std::vector<std::pair<std::size_t, double>> entropy;  // (n, (1/n) ln |L_n(X)|)
  double log_n = 0;
  std::string note;
};

CounterexampleAudit audit_counterexample(const CounterexampleSpec& spec, std::size_t entropy_n_max = 5);

// The repair from the RAS argument: first letter of the leading one-sign run
// set to magnitude 1 and each constrained block moved to its nearest spanning
// word. Nullopt when a needed spanning set is not materialized.
std::optional<Word> ras_repair(const LogLogOracle& oracle, WordView w2);
RepairHint ras_hint(std::shared_ptr<const LogLogOracle> oracle);

PropertyVerdict check_ras_loglog(const CounterexampleSpec& spec, Horizon horizon);

}  // namespace symdyn
