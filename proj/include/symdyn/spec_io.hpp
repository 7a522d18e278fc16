#pragma once

#include <string>
#include <string_view>

#include "symdyn/shift_spec.hpp"

namespace symdyn {

// YAML shift documents. Example:
//
//   family: sft
//   alphabet: ["0", "1"]
//   forbidden: ["11"]
//
// Products and factors nest whole documents under left/right/base. Errors
// carry the 1-based line of the offending field.
ShiftSpecPtr parse_shift_spec(std::string_view document);
ShiftSpecPtr load_shift_spec(const std::string& path);

// Canonical form: fixed key order and quoting, so equal descriptions give
// byte-identical text. parse(serialize(s)) reproduces s.
std::string serialize_shift_spec(const ShiftSpec& spec);

}  // namespace symdyn
