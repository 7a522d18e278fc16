#include "symdyn/spec_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "symdyn/errors.hpp"
#include "symdyn/shift.hpp"

namespace symdyn {

namespace {

constexpr int kSchemaVersion = 1;

std::size_t line_of(const YAML::Node& node) {
  auto mark = node.Mark();
  return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& message) {
  throw ParseError(message, line_of(node), field);
}

YAML::Node require(const YAML::Node& node, const std::string& key) {
  YAML::Node child = node[key];
  if (!child) fail(node, key, "missing field '" + key + "'");
  return child;
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node, field, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, field, "cannot read value '" + node.Scalar() + "'");
  }
}

std::vector<YAML::Node> sequence(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) fail(node, field, "expected a list");
  std::vector<YAML::Node> out;
  for (const auto& item : node) out.push_back(item);
  return out;
}

Alphabet read_alphabet(const YAML::Node& doc) {
  YAML::Node node = require(doc, "alphabet");
  std::vector<std::string> names;
  for (const auto& item : sequence(node, "alphabet")) names.push_back(scalar<std::string>(item, "alphabet"));
  std::vector<long> labels;
  if (YAML::Node l = doc["labels"])
    for (const auto& item : sequence(l, "labels")) labels.push_back(scalar<long>(item, "labels"));
  try {
    return Alphabet(std::move(names), std::move(labels));
  } catch (const InputError& e) {
    fail(node, "alphabet", e.what());
  }
}

Word read_word(const Alphabet& alphabet, const YAML::Node& node, const std::string& field) {
  std::string text = scalar<std::string>(node, field);
  try {
    return parse_word(alphabet, text);
  } catch (const InputError& e) {
    fail(node, field, e.what());
  }
}

std::vector<Word> read_words(const Alphabet& alphabet, const YAML::Node& doc, const std::string& field) {
  std::vector<Word> out;
  for (const auto& item : sequence(require(doc, field), field)) out.push_back(read_word(alphabet, item, field));
  return out;
}

template <typename T>
std::vector<T> read_numbers(const YAML::Node& node, const std::string& field) {
  std::vector<T> out;
  for (const auto& item : sequence(node, field)) out.push_back(scalar<T>(item, field));
  return out;
}

ShiftSpecPtr read_spec(const YAML::Node& doc);

ShiftFamily read_family(const YAML::Node& doc) {
  if (!doc.IsMap()) fail(doc, "", "shift description must be a mapping");
  YAML::Node fam = require(doc, "family");
  std::string family = scalar<std::string>(fam, "family");
  if (family == "full") return FullShiftSpec{read_alphabet(doc)};
  if (family == "sft") {
    Alphabet a = read_alphabet(doc);
    auto forbidden = read_words(a, doc, "forbidden");
    for (const auto& f : forbidden)
      if (f.empty()) fail(doc["forbidden"], "forbidden", "forbidden words must be nonempty");
    return SftSpec{a, forbidden};
  }
  if (family == "beta") {
    BetaSpec b;
    if (YAML::Node p = doc["preperiod"]) b.preperiod = read_numbers<unsigned>(p, "preperiod");
    b.period = read_numbers<unsigned>(require(doc, "period"), "period");
    return b;
  }
  if (family == "s_gap") {
    SGapSpec s;
    if (YAML::Node g = doc["gaps"]) s.gaps = read_numbers<std::size_t>(g, "gaps");
    if (YAML::Node t = doc["tail"]) {
      s.tail_start = scalar<std::size_t>(require(t, "start"), "tail.start");
      if (YAML::Node step = t["step"]) s.tail_step = scalar<std::size_t>(step, "tail.step");
    }
    return s;
  }
  if (family == "bounded_density") {
    YAML::Node g = require(doc, "g");
    try {
      return BoundedDensitySpec{MistakeFunction::parse(scalar<std::string>(g, "g"))};
    } catch (const InputError& e) {
      fail(g, "g", e.what());
    }
  }
  if (family == "at_most_one_one") return AtMostOneOneSpec{};
  if (family == "coded") {
    CodedSpec c;
    if (YAML::Node h = doc["horizon"]) c.horizon = scalar<std::size_t>(h, "horizon");
    if (YAML::Node rule = doc["rule"]) {
      std::string r = scalar<std::string>(rule, "rule");
      if (r != "loglog") fail(rule, "rule", "unknown generator rule '" + r + "'");
      LogLogGenerators l;
      l.n_symbols = scalar<std::size_t>(require(doc, "N"), "N");
      if (YAML::Node m = doc["n_max"]) l.n_max = scalar<std::size_t>(m, "n_max");
      if (YAML::Node m = doc["radius"]) l.radius = scalar<std::size_t>(m, "radius");
      c.alphabet = signed_alphabet(l.n_symbols);
      c.generators = l;
      return c;
    }
    c.alphabet = read_alphabet(doc);
    c.generators = ExplicitGenerators{read_words(c.alphabet, doc, "generators")};
    return c;
  }
  if (family == "product") return ProductSpec{read_spec(require(doc, "left")), read_spec(require(doc, "right"))};
  if (family == "factor") {
    FactorSpec f;
    f.base = read_spec(require(doc, "base"));
    YAML::Node map = require(doc, "map");
    if (YAML::Node r = map["radius"]) f.map.radius = scalar<std::size_t>(r, "map.radius");
    if (YAML::Node sum = map["sum"]) {
      SumRule rule;
      if (sum.IsMap() && sum["cap"]) rule.cap = scalar<long>(sum["cap"], "map.sum.cap");
      f.map.rule = rule;
    } else {
      Alphabet base_alphabet = spec_alphabet(*f.base);
      std::map<Word, std::string> table;
      for (const auto& entry : sequence(require(map, "table"), "map.table")) {
        Word w = read_word(base_alphabet, require(entry, "window"), "map.table.window");
        std::string img = scalar<std::string>(require(entry, "image"), "map.table.image");
        if (!table.emplace(w, img).second) fail(entry, "map.table", "duplicate window");
      }
      f.map.rule = table;
    }
    return f;
  }
  fail(fam, "family", "unknown family '" + family + "'");
}

ShiftSpecPtr read_spec(const YAML::Node& doc) {
  ShiftSpec spec{read_family(doc), {}};
  if (YAML::Node n = doc["name"]) spec.name = scalar<std::string>(n, "name");
  if (YAML::Node v = doc["schema"]) {
    int version = scalar<int>(v, "schema");
    if (version != kSchemaVersion) fail(v, "schema", "unsupported schema version " + std::to_string(version));
  }
  return std::make_shared<const ShiftSpec>(std::move(spec));
}

// ---------------------------------------------------------------- emit

void emit_words(YAML::Emitter& out, const Alphabet& a, const std::vector<Word>& words) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& w : words) out << YAML::DoubleQuoted << format_word(a, w);
  out << YAML::EndSeq;
}

void emit_alphabet(YAML::Emitter& out, const Alphabet& a) {
  out << YAML::Key << "alphabet" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& n : a.names()) out << YAML::DoubleQuoted << n;
  out << YAML::EndSeq;
  // Labels are implied when every name is the integer it labels.
  if (a.has_labels() && Alphabet(a.names()).labels() != a.labels()) {
    out << YAML::Key << "labels" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (long l : a.labels()) out << l;
    out << YAML::EndSeq;
  }
}

template <typename T>
void emit_numbers(YAML::Emitter& out, const std::vector<T>& values) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& v : values) out << v;
  out << YAML::EndSeq;
}

void emit_spec(YAML::Emitter& out, const ShiftSpec& spec, bool top) {
  out << YAML::BeginMap;
  if (top) out << YAML::Key << "schema" << YAML::Value << kSchemaVersion;
  out << YAML::Key << "family" << YAML::Value << family_name(spec);
  if (!spec.name.empty()) out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << spec.name;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FullShiftSpec>) {
          emit_alphabet(out, f.alphabet);
        } else if constexpr (std::is_same_v<T, SftSpec>) {
          emit_alphabet(out, f.alphabet);
          out << YAML::Key << "forbidden" << YAML::Value;
          emit_words(out, f.alphabet, f.forbidden);
        } else if constexpr (std::is_same_v<T, BetaSpec>) {
          out << YAML::Key << "preperiod" << YAML::Value;
          emit_numbers(out, f.preperiod);
          out << YAML::Key << "period" << YAML::Value;
          emit_numbers(out, f.period);
        } else if constexpr (std::is_same_v<T, SGapSpec>) {
          out << YAML::Key << "gaps" << YAML::Value;
          emit_numbers(out, f.gaps);
          if (f.tail_start) {
            out << YAML::Key << "tail" << YAML::Value << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "start" << YAML::Value << *f.tail_start;
            out << YAML::Key << "step" << YAML::Value << f.tail_step;
            out << YAML::EndMap;
          }
        } else if constexpr (std::is_same_v<T, BoundedDensitySpec>) {
          out << YAML::Key << "g" << YAML::Value << YAML::DoubleQuoted << f.g.describe();
        } else if constexpr (std::is_same_v<T, AtMostOneOneSpec>) {
        } else if constexpr (std::is_same_v<T, CodedSpec>) {
          if (const auto* l = std::get_if<LogLogGenerators>(&f.generators)) {
            out << YAML::Key << "rule" << YAML::Value << "loglog";
            out << YAML::Key << "N" << YAML::Value << l->n_symbols;
            out << YAML::Key << "n_max" << YAML::Value << l->n_max;
            out << YAML::Key << "radius" << YAML::Value << l->radius;
          } else {
            emit_alphabet(out, f.alphabet);
            out << YAML::Key << "generators" << YAML::Value;
            emit_words(out, f.alphabet, std::get<ExplicitGenerators>(f.generators).words);
          }
          if (f.horizon) out << YAML::Key << "horizon" << YAML::Value << *f.horizon;
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          out << YAML::Key << "left" << YAML::Value;
          emit_spec(out, *f.left, false);
          out << YAML::Key << "right" << YAML::Value;
          emit_spec(out, *f.right, false);
        } else {
          out << YAML::Key << "base" << YAML::Value;
          emit_spec(out, *f.base, false);
          out << YAML::Key << "map" << YAML::Value << YAML::BeginMap;
          out << YAML::Key << "radius" << YAML::Value << f.map.radius;
          if (const auto* sum = std::get_if<SumRule>(&f.map.rule)) {
            out << YAML::Key << "sum" << YAML::Value << YAML::Flow << YAML::BeginMap;
            if (sum->cap) out << YAML::Key << "cap" << YAML::Value << *sum->cap;
            out << YAML::EndMap;
          } else {
            Alphabet base_alphabet = spec_alphabet(*f.base);
            out << YAML::Key << "table" << YAML::Value << YAML::BeginSeq;
            for (const auto& [w, img] : std::get<std::map<Word, std::string>>(f.map.rule)) {
              out << YAML::Flow << YAML::BeginMap;
              out << YAML::Key << "window" << YAML::Value << YAML::DoubleQuoted << format_word(base_alphabet, w);
              out << YAML::Key << "image" << YAML::Value << YAML::DoubleQuoted << img;
              out << YAML::EndMap;
            }
            out << YAML::EndSeq;
          }
          out << YAML::EndMap;
        }
      },
      spec.family);
  out << YAML::EndMap;
}

}  // namespace

ShiftSpecPtr parse_shift_spec(std::string_view document) {
  YAML::Node doc;
  try {
    doc = YAML::Load(std::string(document));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, static_cast<std::size_t>(e.mark.line + 1), "");
  }
  if (!doc) throw ParseError("empty document", 1, "");
  return read_spec(doc);
}

ShiftSpecPtr load_shift_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open shift description '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_shift_spec(ss.str());
}

std::string serialize_shift_spec(const ShiftSpec& spec) {
  YAML::Emitter out;
  emit_spec(out, spec, true);
  if (!out.good()) throw Error("failed to serialize shift description: " + out.GetLastError());
  return std::string(out.c_str()) + "\n";
}

}  // namespace symdyn
