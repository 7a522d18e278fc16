#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace symdyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed words, symbols outside the alphabet, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// A shift description that cannot be built (empty gap set, inadmissible
// expansion, non-total block map, ...).
class SpecError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::string field)
      : Error(format(message, line, field)), line_(line), field_(std::move(field)) {}
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            const std::string& field) {
    std::string out = "line " + std::to_string(line);
    if (!field.empty()) out += " (" + field + ")";
    return out + ": " + message;
  }
  std::size_t line_;
  std::string field_;
};

// A materialized collection does not reach the length an operation needs.
class InsufficientDepth : public Error {
 public:
  InsufficientDepth(std::size_t needed, std::size_t available)
      : Error("insufficient depth: need words of length " + std::to_string(needed) +
              ", collection stops at " + std::to_string(available)),
        needed_(needed),
        available_(available) {}
  std::size_t needed() const { return needed_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t needed_;
  std::size_t available_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ReducibleShift : public Error {
 public:
  ReducibleShift(std::string message, std::vector<std::vector<std::size_t>> components)
      : Error(std::move(message)), components_(std::move(components)) {}
  const std::vector<std::vector<std::size_t>>& components() const { return components_; }

 private:
  std::vector<std::vector<std::size_t>> components_;
};

}  // namespace symdyn
