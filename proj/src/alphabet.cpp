#include "symdyn/alphabet.hpp"

#include <charconv>
#include <limits>
#include <set>

#include "symdyn/errors.hpp"

namespace symdyn {

namespace {

std::optional<long> parse_integer(std::string_view s) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names, std::vector<long> labels)
    : names_(std::move(names)), labels_(std::move(labels)) {
  if (names_.size() > std::numeric_limits<Symbol>::max()) throw InputError("alphabet too large");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty symbol name");
    for (char c : n)
      if (is_space(c)) throw InputError("symbol name contains whitespace: '" + n + "'");
    if (!seen.insert(n).second) throw InputError("duplicate symbol name: '" + n + "'");
    if (n.size() != 1) compact_ = false;
  }
  if (!labels_.empty() && labels_.size() != names_.size())
    throw InputError("label count does not match alphabet size");
  if (labels_.empty()) {
    std::vector<long> derived;
    for (const auto& n : names_) {
      auto v = parse_integer(n);
      if (!v) {
        derived.clear();
        break;
      }
      derived.push_back(*v);
    }
    labels_ = std::move(derived);
  }
}

Alphabet Alphabet::digits(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back(std::to_string(i));
  return Alphabet(std::move(names));
}

const std::string& Alphabet::name(Symbol s) const {
  if (s >= names_.size()) throw InputError("symbol index out of range: " + std::to_string(s));
  return names_[s];
}

long Alphabet::label(Symbol s) const {
  if (labels_.empty()) throw InputError("alphabet has no integer labels");
  if (s >= labels_.size()) throw InputError("symbol index out of range: " + std::to_string(s));
  return labels_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Symbol>(i);
  return std::nullopt;
}

Symbol Alphabet::index_of(std::string_view name) const {
  auto s = find(name);
  if (!s) throw InputError("symbol not in alphabet: '" + std::string(name) + "'");
  return *s;
}

std::string format_word(const Alphabet& alphabet, WordView word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!alphabet.compact() && i > 0) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  text = text.substr(b, e - b);
  Word out;
  if (text.empty() || text == "ε") return out;
  bool has_space = false;
  for (char c : text) has_space = has_space || is_space(c);
  if (!has_space && alphabet.compact()) {
    for (char c : text) out.push_back(alphabet.index_of(std::string_view(&c, 1)));
    return out;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.push_back(alphabet.index_of(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

}  // namespace symdyn
