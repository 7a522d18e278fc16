#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

// Nondecreasing budget g(n) of letter changes allowed in a word of length n.
// Text forms: "const:m", "table:g1,g2,...", "sqrt" (ceil sqrt n), "loglog"
// (1 + 2 floor(log2 log2 n), 1 below n = 4), "log:c[:b]" (b + c floor(log2 n)).
// Tables give g(1), g(2), ... and repeat their last value afterwards.
class MistakeFunction {
 public:
  enum class Kind { Constant, Table, Sqrt, LogLog, Log };

  static MistakeFunction constant(std::size_t m);
  static MistakeFunction table(std::vector<std::size_t> values);
  static MistakeFunction sqrt_ceil();
  static MistakeFunction loglog();
  static MistakeFunction log2_scaled(std::size_t c, std::size_t offset = 0);
  static MistakeFunction parse(std::string_view text);

  MistakeFunction() : MistakeFunction(constant(0)) {}

  std::size_t operator()(std::size_t n) const;
  Kind kind() const { return kind_; }
  std::string describe() const;
  // Present when g is bounded; the bound.
  std::optional<std::size_t> bound() const;

  bool operator==(const MistakeFunction& o) const {
    return kind_ == o.kind_ && values_ == o.values_ && c_ == o.c_ && offset_ == o.offset_;
  }

 private:
  MistakeFunction(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<std::size_t> values_;
  std::size_t c_ = 0;
  std::size_t offset_ = 0;
};

// floor(log2 log2 n) for n >= 4, else 0.
std::size_t floor_log2_log2(std::size_t n);
std::size_t floor_log2(std::size_t n);
std::size_t ceil_sqrt(std::size_t n);

}  // namespace symdyn
