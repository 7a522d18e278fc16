#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "symdyn/properties.hpp"
#include "symdyn/shift.hpp"

namespace symdyn {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "symdyn-report/1";

using Json = nlohmann::ordered_json;

// One command's output: a JSON document plus an optional table. Reports hold
// no timings or paths, so equal inputs give byte-identical output.
struct Report {
  std::string command;
  Json parameters = Json::object();
  Json provenance = Json::object();
  Json body = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  int exit_status = 0;

  void set_shift(const Shift& shift);
  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  std::string to_json() const;
  // Header line plus rows; falls back to a one-line summary when there is no table.
  std::string to_csv() const;
};

// Shortest round-trip decimal form used for CSV cells.
std::string format_number(double x);
std::string format_bool(bool b);

Json word_json(const Alphabet& alphabet, WordView w);
Json words_json(const Alphabet& alphabet, const std::vector<Word>& words);
Json horizon_json(Horizon h);
Json verdict_json(const Alphabet& alphabet, const PropertyVerdict& v);

}  // namespace symdyn
