#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

using Symbol = std::uint16_t;
using Word = std::vector<Symbol>;
using WordView = std::span<const Symbol>;

// Ordered finite alphabet. Symbol i is the i-th name; lexicographic order on
// words follows symbol indices. Names that parse as integers double as labels
// unless explicit labels are given.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names, std::vector<long> labels = {});

  static Alphabet digits(std::size_t count);
  static Alphabet binary() { return digits(2); }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(Symbol s) const;
  const std::vector<std::string>& names() const { return names_; }
  bool has_labels() const { return !labels_.empty(); }
  long label(Symbol s) const;
  const std::vector<long>& labels() const { return labels_; }

  std::optional<Symbol> find(std::string_view name) const;
  Symbol index_of(std::string_view name) const;

  // True when every name is a single character, so words print without separators.
  bool compact() const { return compact_; }

  bool operator==(const Alphabet& other) const { return names_ == other.names_ && labels_ == other.labels_; }

 private:
  std::vector<std::string> names_;
  std::vector<long> labels_;
  bool compact_ = true;
};

std::string format_word(const Alphabet& alphabet, WordView word);
// Accepts concatenated single-character symbols or whitespace-separated tokens.
// "" and "ε" denote the empty word.
Word parse_word(const Alphabet& alphabet, std::string_view text);

}  // namespace symdyn
