#include "symdyn/shift.hpp"

#include <algorithm>

#include "symdyn/errors.hpp"
#include "symdyn/families.hpp"
#include "symdyn/spec_io.hpp"
#include "symdyn/util.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

Shift::Shift(ShiftSpecPtr spec, OraclePtr oracle, std::string fingerprint, std::string name)
    : spec_(std::move(spec)), oracle_(std::move(oracle)), fingerprint_(std::move(fingerprint)), name_(std::move(name)) {}

Membership Shift::contains(WordView w) const {
  for (Symbol s : w)
    if (s >= alphabet().size())
      throw InputError("symbol index " + std::to_string(s) + " is outside the alphabet of " + name_);
  return oracle_->contains(w);
}

namespace {

OraclePtr build_oracle(const ShiftSpec& spec);

std::function<std::string(WordView)> window_function(const ShiftSpec& base_spec, const LanguageOracle& base,
                                                     const BlockMapSpec& map) {
  std::size_t span = 2 * map.radius + 1;
  if (const auto* table = std::get_if<std::map<Word, std::string>>(&map.rule)) {
    for (const auto& [w, img] : *table) {
      if (w.size() != span) throw SpecError("block map window has length " + std::to_string(w.size()) +
                                            ", expected " + std::to_string(span));
      if (img.empty()) throw SpecError("block map image symbol is empty");
    }
    auto copy = *table;
    const Alphabet& alphabet = base.alphabet();
    return [copy, &alphabet](WordView w) -> std::string {
      auto it = copy.find(Word(w.begin(), w.end()));
      if (it == copy.end())
        throw SpecError("block map is not total: no image for window '" + format_word(alphabet, w) + "'");
      return it->second;
    };
  }
  const auto& rule = std::get<SumRule>(map.rule);
  auto weights = symbol_weights(base_spec, base.alphabet());
  return [weights, rule](WordView w) -> std::string {
    long total = 0;
    for (Symbol s : w) total += weights[s];
    if (rule.cap) total = std::min(total, *rule.cap);
    return std::to_string(total);
  };
}

OraclePtr build_oracle(const ShiftSpec& spec) {
  return std::visit(
      [&](const auto& f) -> OraclePtr {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FullShiftSpec>) {
          if (f.alphabet.empty()) throw SpecError("alphabet must be nonempty");
          return std::make_shared<FullOracle>(f.alphabet);
        } else if constexpr (std::is_same_v<T, SftSpec>) {
          if (f.alphabet.empty()) throw SpecError("alphabet must be nonempty");
          return std::make_shared<SftOracle>(f.alphabet, f.forbidden);
        } else if constexpr (std::is_same_v<T, BetaSpec>) {
          return std::make_shared<BetaOracle>(f);
        } else if constexpr (std::is_same_v<T, SGapSpec>) {
          return std::make_shared<SGapOracle>(f);
        } else if constexpr (std::is_same_v<T, BoundedDensitySpec>) {
          if (f.g(1) < 1) throw SpecError("bounded density needs g(1) >= 1");
          return std::make_shared<BoundedDensityOracle>(f.g);
        } else if constexpr (std::is_same_v<T, AtMostOneOneSpec>) {
          return std::make_shared<AtMostOneOneOracle>();
        } else if constexpr (std::is_same_v<T, CodedSpec>) {
          if (const auto* e = std::get_if<ExplicitGenerators>(&f.generators))
            return std::make_shared<ExplicitCodedOracle>(f.alphabet, e->words);
          return std::make_shared<LogLogOracle>(std::get<LogLogGenerators>(f.generators), f.horizon);
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          if (!f.left || !f.right) throw SpecError("product needs both factors");
          return std::make_shared<ProductOracle>(build_oracle(*f.left), build_oracle(*f.right));
        } else {
          static_assert(std::is_same_v<T, FactorSpec>);
          if (!f.base) throw SpecError("factor needs a base shift");
          auto base = build_oracle(*f.base);
          auto fn = window_function(*f.base, *base, f.map);
          return std::make_shared<FactorOracle>(base, f.map.radius, fn);
        }
      },
      spec.family);
}

}  // namespace

Shift make_shift(ShiftSpecPtr spec) {
  if (!spec) throw SpecError("null shift description");
  auto oracle = build_oracle(*spec);
  std::string text = serialize_shift_spec(*spec);
  std::string name = spec->name.empty() ? family_name(*spec) : spec->name;
  return Shift(spec, oracle, sha256_hex(text), name);
}

Shift make_shift(const ShiftSpec& spec) { return make_shift(std::make_shared<const ShiftSpec>(spec)); }

Shift reflect(const Shift& shift) {
  return Shift(nullptr, std::make_shared<ReflectedOracle>(shift.oracle_ptr()), sha256_hex("reflect:" + shift.fingerprint()),
               "reflect(" + shift.name() + ")");
}

Shift shift_from_oracle(OraclePtr oracle, std::string fingerprint, std::string name) {
  return Shift(nullptr, std::move(oracle), std::move(fingerprint), std::move(name));
}

std::string family_name(const ShiftSpec& spec) {
  static const char* names[] = {"full", "sft", "beta", "s_gap", "bounded_density",
                                "at_most_one_one", "coded", "product", "factor"};
  return names[spec.family.index()];
}

Alphabet spec_alphabet(const ShiftSpec& spec) {
  return std::visit(
      [&](const auto& f) -> Alphabet {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FullShiftSpec> || std::is_same_v<T, SftSpec>) {
          return f.alphabet;
        } else if constexpr (std::is_same_v<T, CodedSpec>) {
          if (const auto* l = std::get_if<LogLogGenerators>(&f.generators)) return signed_alphabet(l->n_symbols);
          return f.alphabet;
        } else if constexpr (std::is_same_v<T, BetaSpec>) {
          unsigned lead = f.preperiod.empty() ? (f.period.empty() ? 0 : f.period[0]) : f.preperiod[0];
          return Alphabet::digits(lead + 1);
        } else if constexpr (std::is_same_v<T, SGapSpec> || std::is_same_v<T, BoundedDensitySpec> ||
                             std::is_same_v<T, AtMostOneOneSpec>) {
          return Alphabet::binary();
        } else {
          return build_oracle(spec)->alphabet();
        }
      },
      spec.family);
}

namespace specs {

namespace {
ShiftSpecPtr wrap(ShiftFamily f, std::string name = {}) {
  return std::make_shared<const ShiftSpec>(ShiftSpec{std::move(f), std::move(name)});
}
}  // namespace

ShiftSpecPtr full(std::size_t alphabet_size) { return wrap(FullShiftSpec{Alphabet::digits(alphabet_size)}); }
ShiftSpecPtr full(Alphabet alphabet) { return wrap(FullShiftSpec{std::move(alphabet)}); }
ShiftSpecPtr sft(Alphabet alphabet, std::vector<Word> forbidden) {
  return wrap(SftSpec{std::move(alphabet), std::move(forbidden)});
}
ShiftSpecPtr golden_mean() { return wrap(SftSpec{Alphabet::binary(), {Word{1, 1}}}, "golden-mean"); }
ShiftSpecPtr beta(std::vector<unsigned> preperiod, std::vector<unsigned> period) {
  return wrap(BetaSpec{std::move(preperiod), std::move(period)});
}
ShiftSpecPtr beta_golden() { return wrap(BetaSpec{{}, {1, 0}}, "beta-golden"); }
ShiftSpecPtr s_gap(std::vector<std::size_t> gaps, std::optional<std::size_t> tail_start, std::size_t tail_step) {
  return wrap(SGapSpec{std::move(gaps), tail_start, tail_step});
}
ShiftSpecPtr bounded_density(MistakeFunction g) { return wrap(BoundedDensitySpec{std::move(g)}); }
ShiftSpecPtr at_most_one_one() { return wrap(AtMostOneOneSpec{}, "at-most-one-1"); }
ShiftSpecPtr coded(Alphabet alphabet, std::vector<Word> generators, std::optional<std::size_t> horizon) {
  return wrap(CodedSpec{std::move(alphabet), ExplicitGenerators{std::move(generators)}, horizon});
}
ShiftSpecPtr loglog(std::size_t n_symbols, std::size_t n_max, std::size_t radius) {
  return wrap(CodedSpec{signed_alphabet(n_symbols), LogLogGenerators{n_symbols, n_max, radius}, std::nullopt},
              "loglog");
}
ShiftSpecPtr product(ShiftSpecPtr left, ShiftSpecPtr right) {
  return wrap(ProductSpec{std::move(left), std::move(right)});
}
ShiftSpecPtr factor(ShiftSpecPtr base, BlockMapSpec map) { return wrap(FactorSpec{std::move(base), std::move(map)}); }
ShiftSpecPtr sum_factor(ShiftSpecPtr base, std::size_t radius, std::optional<long> cap) {
  return wrap(FactorSpec{std::move(base), BlockMapSpec{radius, SumRule{cap}}});
}

}  // namespace specs

}  // namespace symdyn
