#pragma once

#include <memory>
#include <string>

#include "symdyn/oracle.hpp"
#include "symdyn/shift_spec.hpp"

namespace symdyn {

// A validated shift: its description (absent for derived shifts such as
// reflections), its membership oracle, and a fingerprint of the canonical
// serialization used to key caches.
class Shift {
 public:
  Shift(ShiftSpecPtr spec, OraclePtr oracle, std::string fingerprint, std::string name);

  const ShiftSpec* spec() const { return spec_.get(); }
  ShiftSpecPtr spec_ptr() const { return spec_; }
  const LanguageOracle& oracle() const { return *oracle_; }
  OraclePtr oracle_ptr() const { return oracle_; }
  const Alphabet& alphabet() const { return oracle_->alphabet(); }
  const std::string& fingerprint() const { return fingerprint_; }
  const std::string& name() const { return name_; }
  bool exact() const { return oracle_->exact(); }

  // Validates that every symbol is in the alphabet.
  Membership contains(WordView w) const;

 private:
  ShiftSpecPtr spec_;
  OraclePtr oracle_;
  std::string fingerprint_;
  std::string name_;
};

Shift make_shift(ShiftSpecPtr spec);
Shift make_shift(const ShiftSpec& spec);

// The mirror image x(i) -> x(-i); L(reflect X) is the set of reversed words.
Shift reflect(const Shift& shift);

// Wraps an arbitrary oracle, e.g. one backed by a word collection.
Shift shift_from_oracle(OraclePtr oracle, std::string fingerprint, std::string name);

}  // namespace symdyn
