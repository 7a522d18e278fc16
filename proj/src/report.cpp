#include "symdyn/report.hpp"

#include <cmath>
#include <cstdio>

namespace symdyn {

void Report::set_shift(const Shift& shift) {
  provenance["tool_version"] = kToolVersion;
  provenance["shift"] = shift.name();
  provenance["fingerprint"] = shift.fingerprint();
  provenance["exact_oracle"] = shift.exact();
}

std::string Report::to_json() const {
  Json doc;
  doc["schema"] = kReportSchema;
  doc["command"] = command;
  doc["parameters"] = parameters;
  Json prov = provenance;
  if (!prov.contains("tool_version")) prov["tool_version"] = kToolVersion;
  doc["provenance"] = prov;
  doc["result"] = body;
  doc["exit_status"] = exit_status;
  if (!columns.empty()) {
    Json table = Json::array();
    for (const auto& r : rows) {
      Json row = Json::object();
      for (std::size_t i = 0; i < columns.size() && i < r.size(); ++i) row[columns[i]] = r[i];
      table.push_back(row);
    }
    doc["table"] = table;
  }
  return doc.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::string out;
  if (columns.empty()) {
    out = "command,exit_status\n" + command + "," + std::to_string(exit_status) + "\n";
    return out;
  }
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + cell(columns[i]);
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell(r[i]);
    out += "\n";
  }
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

Json word_json(const Alphabet& alphabet, WordView w) { return format_word(alphabet, w); }

Json words_json(const Alphabet& alphabet, const std::vector<Word>& words) {
  Json a = Json::array();
  for (const auto& w : words) a.push_back(format_word(alphabet, w));
  return a;
}

Json horizon_json(Horizon h) { return Json::array({h.left, h.right}); }

Json verdict_json(const Alphabet& alphabet, const PropertyVerdict& v) {
  Json j;
  j["property"] = v.property;
  j["status"] = to_string(v.status);
  j["horizon"] = horizon_json(v.horizon);
  j["witness"] = words_json(alphabet, v.witness);
  if (!v.reason.empty()) j["reason"] = v.reason;
  j["instances"] = v.instances;
  return j;
}

}  // namespace symdyn
