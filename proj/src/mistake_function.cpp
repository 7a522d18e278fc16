#include "symdyn/mistake_function.hpp"

#include <charconv>

#include "symdyn/errors.hpp"

namespace symdyn {

std::size_t floor_log2(std::size_t n) {
  std::size_t r = 0;
  while (n > 1) {
    n >>= 1;
    ++r;
  }
  return r;
}

std::size_t floor_log2_log2(std::size_t n) { return n < 4 ? 0 : floor_log2(floor_log2(n)); }

std::size_t ceil_sqrt(std::size_t n) {
  std::size_t r = 0;
  while (r * r < n) ++r;
  return r;
}

MistakeFunction MistakeFunction::constant(std::size_t m) {
  MistakeFunction f(Kind::Constant);
  f.c_ = m;
  return f;
}

MistakeFunction MistakeFunction::table(std::vector<std::size_t> values) {
  if (values.empty()) throw InputError("mistake table is empty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1]) throw InputError("mistake table must be nondecreasing");
  MistakeFunction f(Kind::Table);
  f.values_ = std::move(values);
  return f;
}

MistakeFunction MistakeFunction::sqrt_ceil() { return MistakeFunction(Kind::Sqrt); }
MistakeFunction MistakeFunction::loglog() { return MistakeFunction(Kind::LogLog); }

MistakeFunction MistakeFunction::log2_scaled(std::size_t c, std::size_t offset) {
  MistakeFunction f(Kind::Log);
  f.c_ = c;
  f.offset_ = offset;
  return f;
}

std::size_t MistakeFunction::operator()(std::size_t n) const {
  switch (kind_) {
    case Kind::Constant: return c_;
    case Kind::Table:
      if (n == 0) return 0;
      return n <= values_.size() ? values_[n - 1] : values_.back();
    case Kind::Sqrt: return ceil_sqrt(n);
    case Kind::LogLog: return 1 + 2 * floor_log2_log2(n);
    case Kind::Log: return offset_ + c_ * floor_log2(n);
  }
  return 0;
}

std::optional<std::size_t> MistakeFunction::bound() const {
  switch (kind_) {
    case Kind::Constant: return c_;
    case Kind::Table: return values_.back();
    default: return std::nullopt;
  }
}

std::string MistakeFunction::describe() const {
  switch (kind_) {
    case Kind::Constant: return "const:" + std::to_string(c_);
    case Kind::Table: {
      std::string s = "table:";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(values_[i]);
      }
      return s;
    }
    case Kind::Sqrt: return "sqrt";
    case Kind::LogLog: return "loglog";
    case Kind::Log:
      return "log:" + std::to_string(c_) + (offset_ ? ":" + std::to_string(offset_) : "");
  }
  return "";
}

namespace {

std::size_t parse_count(std::string_view s, std::string_view context) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InputError("bad integer '" + std::string(s) + "' in mistake function '" +
                     std::string(context) + "'");
  return v;
}

std::vector<std::size_t> split_counts(std::string_view s, char sep, std::string_view context) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    out.push_back(parse_count(s.substr(start, end - start), context));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

MistakeFunction MistakeFunction::parse(std::string_view text) {
  if (text == "sqrt") return sqrt_ceil();
  if (text == "loglog") return loglog();
  auto colon = text.find(':');
  std::string_view head = text.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (head == "const") return constant(parse_count(rest, text));
  if (head == "table") return table(split_counts(rest, ',', text));
  if (head == "log") {
    auto parts = split_counts(rest, ':', text);
    if (parts.size() > 2) throw InputError("log mistake function takes at most two parameters");
    return log2_scaled(parts[0], parts.size() == 2 ? parts[1] : 0);
  }
  // A bare integer is a constant.
  if (colon == std::string_view::npos && !text.empty() && text.find(',') == std::string_view::npos)
    return constant(parse_count(text, text));
  throw InputError("unknown mistake function '" + std::string(text) + "'");
}

}  // namespace symdyn
