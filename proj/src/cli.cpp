#include "symdyn/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "symdyn/audit.hpp"
#include "symdyn/counterexample.hpp"
#include "symdyn/entropy.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/language.hpp"
#include "symdyn/measures.hpp"
#include "symdyn/report.hpp"
#include "symdyn/spec_io.hpp"
#include "symdyn/structure.hpp"
#include "symdyn/util.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

namespace {

struct Options {
  std::string spec;
  std::size_t n_max = 10;
  std::string horizon = "6,6";
  std::string g = "const:1";
  std::string cache_dir;
  std::string out;
  std::string format = "json";
  std::size_t threads = 0;

  std::size_t tau = 1;
  std::size_t segments = 3;
  std::string w1, w2, side = "left";
  std::string word;
  std::size_t search_horizon = 12;
  std::size_t gap_bound = 32;
  std::size_t period = 5;
  std::size_t m = 1;
  std::optional<double> h;
  std::string w;
  std::size_t q1_depth = 0;
  bool list = false;
  std::size_t depth = 6;
  std::size_t samples = 1000;
  std::size_t uu_max = 4;
  std::size_t n_symbols = 4;
  std::size_t radius = 2;
};

Horizon parse_horizon(const std::string& text) {
  auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      std::size_t a = std::stoul(text);
      return {a, a};
    }
    return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InputError("--horizon expects <int> or <int,int>, got '" + text + "'");
  }
}

Shift load(const Options& o) {
  if (o.spec.empty()) throw InputError("--spec is required");
  return make_shift(load_shift_spec(o.spec));
}

void common(CLI::App* sub, Options& o, bool needs_spec = true) {
  if (needs_spec) sub->add_option("--spec", o.spec, "shift document (YAML)")->required();
  sub->add_option("--n-max", o.n_max, "largest word length");
  sub->add_option("--horizon", o.horizon, "length horizon a,b");
  sub->add_option("--g", o.g, "mistake function: const:m, table:..., sqrt, loglog, log:c[:b]");
  sub->add_option("--cache-dir", o.cache_dir, "directory for the count cache");
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", o.threads, "worker threads (0 = default)");
}

void set_params(Report& r, const Options& o, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    std::string key = k;
    if (key == "n_max") r.parameters[key] = o.n_max;
    else if (key == "horizon") r.parameters[key] = horizon_json(parse_horizon(o.horizon));
    else if (key == "g") r.parameters[key] = MistakeFunction::parse(o.g).describe();
  }
}

Report cmd_enumerate(const Options& o) {
  Shift shift = load(o);
  Report r;
  r.command = "enumerate";
  r.set_shift(shift);
  set_params(r, o, {"n_max"});
  r.parameters["list"] = o.list;
  r.columns = {"n", "count", "possible", "approximate"};
  Json levels = Json::array();
  if (o.list) {
    auto slices = enumerate_language_upto(shift, o.n_max);
    for (const auto& s : slices) {
      Json l;
      l["n"] = s.length;
      l["count"] = s.certain();
      l["possible"] = s.possible();
      l["approximate"] = s.approximate();
      l["words"] = words_json(shift.alphabet(), s.words);
      if (s.approximate()) l["unknown"] = words_json(shift.alphabet(), s.unknown);
      levels.push_back(l);
      r.add_row({std::to_string(s.length), std::to_string(s.certain()), std::to_string(s.possible()),
                 format_bool(s.approximate())});
    }
  } else {
    for (const auto& c : count_language(shift, o.n_max)) {
      levels.push_back(Json{{"n", c.n}, {"count", c.certain}, {"possible", c.possible},
                            {"approximate", c.approximate()}});
      r.add_row({std::to_string(c.n), std::to_string(c.certain), std::to_string(c.possible),
                 format_bool(c.approximate())});
    }
  }
  r.body["levels"] = levels;
  return r;
}

Report cmd_entropy(const Options& o) {
  Shift shift = load(o);
  auto e = entropy_report(shift, o.n_max);
  Report r;
  r.command = "entropy";
  r.set_shift(shift);
  set_params(r, o, {"n_max"});
  r.columns = {"n", "count", "estimate", "bound", "pass"};
  Json rows = Json::array();
  for (const auto& row : e.rows) {
    // The bound column is h itself when known, else the running infimum;
    // every estimate must sit at or above it.
    double bound = e.exact ? *e.exact : row.running_inf;
    bool pass = row.certain == 0 || row.estimate >= bound - 1e-12;
    rows.push_back(Json{{"n", row.n},
                        {"count", row.certain},
                        {"possible", row.possible},
                        {"estimate", row.estimate},
                        {"running_inf", row.running_inf},
                        {"approximate", row.approximate}});
    r.add_row({std::to_string(row.n), std::to_string(row.certain), format_number(row.estimate),
               format_number(bound), format_bool(pass)});
    if (!pass) r.exit_status = 1;
  }
  r.body["rows"] = rows;
  r.body["exact"] = e.exact ? Json(*e.exact) : Json(nullptr);
  r.body["approximate"] = e.approximate;
  r.body["subadditivity_checked"] = e.subadditivity_checked;
  Json viol = Json::array();
  for (auto [a, b] : e.subadditivity_violations) viol.push_back(Json::array({a, b}));
  r.body["subadditivity_violations"] = viol;
  if (!e.subadditivity_violations.empty()) r.exit_status = 1;
  if (e.approximate && r.exit_status == 0) r.exit_status = 2;
  return r;
}

Report verdict_report(const std::string& command, const Shift& shift, const PropertyVerdict& v) {
  Report r;
  r.command = command;
  r.set_shift(shift);
  r.provenance["horizon"] = horizon_json(v.horizon);
  r.body["verdict"] = verdict_json(shift.alphabet(), v);
  r.exit_status = exit_code(v);
  r.columns = {"property", "status", "horizon_left", "horizon_right", "witness"};
  std::string wit;
  for (std::size_t i = 0; i < v.witness.size(); ++i)
    wit += (i ? " " : "") + format_word(shift.alphabet(), v.witness[i]);
  r.add_row({v.property, to_string(v.status), std::to_string(v.horizon.left), std::to_string(v.horizon.right), wit});
  return r;
}

Report cmd_check_spec(const Options& o) {
  Shift shift = load(o);
  auto v = check_specification(shift, o.tau, parse_horizon(o.horizon));
  Report r = verdict_report("check-spec", shift, v);
  r.parameters["tau"] = o.tau;
  set_params(r, o, {"horizon"});
  return r;
}

Report cmd_almost(const Options& o, AlmostSpecMode mode) {
  Shift shift = load(o);
  auto g = MistakeFunction::parse(o.g);
  AlmostSpecOptions opt;
  opt.mode = mode;
  opt.horizon = parse_horizon(o.horizon);
  opt.segments = o.segments;
  auto v = check_almost_spec(shift, g, opt);
  const char* name = mode == AlmostSpecMode::AS ? "check-as" : mode == AlmostSpecMode::LAS ? "check-las" : "check-ras";
  Report r = verdict_report(name, shift, v);
  set_params(r, o, {"g", "horizon"});
  if (mode == AlmostSpecMode::AS) r.parameters["segments"] = o.segments;
  return r;
}

Report cmd_min_mistakes(const Options& o) {
  Shift shift = load(o);
  Word w1 = parse_word(shift.alphabet(), o.w1), w2 = parse_word(shift.alphabet(), o.w2);
  if (o.side != "left" && o.side != "right") throw InputError("--side must be left or right");
  auto res = o.side == "left" ? min_mistakes_left(shift, w1, w2) : min_mistakes_right(shift, w1, w2);
  Report r;
  r.command = "min-mistakes";
  r.set_shift(shift);
  r.parameters["w1"] = o.w1;
  r.parameters["w2"] = o.w2;
  r.parameters["side"] = o.side;
  r.body["mistakes"] = res.mistakes ? Json(*res.mistakes) : Json(nullptr);
  r.body["repaired"] = res.mistakes ? word_json(shift.alphabet(), res.repaired) : Json(nullptr);
  r.body["inconclusive"] = res.inconclusive;
  r.columns = {"w1", "w2", "side", "mistakes", "repaired"};
  r.add_row({o.w1, o.w2, o.side, res.mistakes ? std::to_string(*res.mistakes) : "inf",
             res.mistakes ? format_word(shift.alphabet(), res.repaired) : ""});
  r.exit_status = res.inconclusive ? 2 : res.mistakes ? 0 : 1;
  return r;
}

Json glue_json(const Alphabet& a, const GluingData& g) {
  Json j;
  j["stabilized"] = g.stabilized;
  if (!g.reason.empty()) j["reason"] = g.reason;
  j["i"] = g.i;
  j["y"] = word_json(a, g.y);
  j["v0"] = word_json(a, g.v0);
  j["w"] = word_json(a, g.w);
  j["v"] = word_json(a, g.v);
  j["y_prime"] = word_json(a, g.y_prime);
  j["u"] = word_json(a, g.u);
  j["u_prime"] = word_json(a, g.u_prime);
  j["d"] = words_json(a, g.d);
  Json chain = Json::array();
  for (const auto& s : g.chain)
    chain.push_back(Json{{"w", word_json(a, s.w)}, {"v", word_json(a, s.v)}, {"d", words_json(a, s.d)}});
  j["chain"] = chain;
  return j;
}

Report cmd_glue(const Options& o) {
  Shift shift = load(o);
  auto g = build_gluing(shift, o.depth);
  Report r;
  r.command = "glue";
  r.set_shift(shift);
  r.parameters["depth"] = o.depth;
  r.parameters["uu_max"] = o.uu_max;
  r.parameters["samples"] = o.samples;
  r.provenance["horizon"] = o.depth;
  r.body["gluing"] = glue_json(shift.alphabet(), g);
  r.columns = {"check", "status", "instances"};
  if (!g.stabilized) {
    r.exit_status = 2;
    r.add_row({"stabilized", "Inconclusive", "0"});
    return r;
  }
  r.add_row({"stabilized", "Holds", std::to_string(g.chain.size())});
  auto uu = check_uu_prime(shift, g, o.uu_max, o.uu_max);
  Json uj{{"max_x", o.uu_max}, {"max_z", o.uu_max}, {"instances", uu.instances}, {"inconclusive", uu.inconclusive}};
  if (uu.counterexample)
    uj["counterexample"] = Json::array(
        {word_json(shift.alphabet(), uu.counterexample->first), word_json(shift.alphabet(), uu.counterexample->second)});
  r.body["uu_prime"] = uj;
  std::string uu_status = uu.counterexample ? "FailsWith" : uu.inconclusive ? "Inconclusive" : "Holds";
  r.add_row({"uu_prime", uu_status, std::to_string(uu.instances)});
  auto closure = check_closure_conditions(shift, g, o.samples, o.n_max);
  r.body["closure"] = Json{{"window", closure.window},
                           {"I", verdict_json(shift.alphabet(), closure.spec_i)},
                           {"IIIa", verdict_json(shift.alphabet(), closure.inter_iiia)},
                           {"IIIb", verdict_json(shift.alphabet(), closure.union_iiib)}};
  for (const auto* v : {&closure.spec_i, &closure.inter_iiia, &closure.union_iiib})
    r.add_row({v->property, to_string(v->status), std::to_string(v->instances)});
  std::size_t gcd = gluing_gcd(shift, g, o.n_max);
  r.body["gcd"] = gcd;
  r.body["gcd_n_max"] = o.n_max;
  r.add_row({"gcd", gcd == 1 ? "Holds" : "FailsWith", std::to_string(gcd)});

  int status = 0;
  auto worst = [&](int s) {
    if (s == 1 || status == 1) status = 1;
    else status = std::max(status, s);
  };
  worst(uu.counterexample ? 1 : uu.inconclusive ? 2 : 0);
  worst(exit_code(closure.spec_i));
  worst(exit_code(closure.inter_iiia));
  worst(exit_code(closure.union_iiib));
  worst(gcd == 1 ? 0 : 1);
  r.exit_status = status;
  return r;
}

Report cmd_decompose(const Options& o) {
  Shift shift = load(o);
  auto g = build_gluing(shift, o.depth);
  Report r;
  r.command = "decompose";
  r.set_shift(shift);
  r.parameters["depth"] = o.depth;
  r.body["gluing"] = glue_json(shift.alphabet(), g);
  if (!g.stabilized) {
    r.exit_status = 2;
    return r;
  }
  const auto& a = shift.alphabet();
  if (!o.word.empty()) {
    Word w = parse_word(a, o.word);
    auto d = classify_word(shift, g, w);
    r.parameters["word"] = o.word;
    r.body["decomposition"] = Json{{"kind", to_string(d.kind)},
                                   {"prefix", word_json(a, d.prefix)},
                                   {"core", word_json(a, d.core)},
                                   {"suffix", word_json(a, d.suffix)}};
    r.columns = {"word", "kind", "prefix", "core", "suffix"};
    r.add_row({o.word, to_string(d.kind), format_word(a, d.prefix), format_word(a, d.core), format_word(a, d.suffix)});
    return r;
  }
  set_params(r, o, {"n_max"});
  auto rows = obstruction_entropies(shift, g, o.n_max);
  r.columns = {"n", "total", "G", "Cp", "Cs", "B", "decomposable", "bbound", "bbound_ok", "h_total", "h_obstructions"};
  Json arr = Json::array();
  for (const auto& x : rows) {
    arr.push_back(Json{{"n", x.n},
                       {"total", x.total},
                       {"G", x.g},
                       {"Cp", x.cp},
                       {"Cs", x.cs},
                       {"C_prime", x.c_prime},
                       {"B", x.b},
                       {"decomposable", x.decomposable},
                       {"obstructions", x.obstructions},
                       {"bbound", x.bbound},
                       {"bbound_ok", x.bbound_ok},
                       {"h_total", x.h_total},
                       {"h_obstructions", x.h_obstructions}});
    r.add_row({std::to_string(x.n), std::to_string(x.total), std::to_string(x.g), std::to_string(x.cp),
               std::to_string(x.cs), std::to_string(x.b), std::to_string(x.decomposable), format_number(x.bbound),
               format_bool(x.bbound_ok), format_number(x.h_total), format_number(x.h_obstructions)});
    if (!x.bbound_ok || x.decomposable + x.b != x.total) r.exit_status = 1;
  }
  r.body["rows"] = arr;
  return r;
}

Report cmd_measure_center(const Options& o) {
  Shift shift = load(o);
  auto g = MistakeFunction::parse(o.g);
  auto mc = measure_center_approx(shift, g, o.n_max, o.search_horizon);
  Report r;
  r.command = "measure-center";
  r.set_shift(shift);
  set_params(r, o, {"n_max", "g"});
  r.parameters["search_horizon"] = o.search_horizon;
  r.provenance["horizon"] = o.search_horizon;
  r.body["direction"] = mc.direction;
  r.body["inconclusive"] = mc.inconclusive;
  r.columns = {"n", "kept", "flagged"};
  Json levels = Json::array();
  for (const auto& l : mc.levels) {
    levels.push_back(Json{{"n", l.n},
                          {"kept", words_json(shift.alphabet(), l.kept)},
                          {"flagged", words_json(shift.alphabet(), l.flagged)}});
    r.add_row({std::to_string(l.n), std::to_string(l.kept.size()), std::to_string(l.flagged.size())});
  }
  r.body["levels"] = levels;
  r.exit_status = mc.inconclusive ? 2 : 0;
  return r;
}

Report cmd_irreducible(const Options& o) {
  Shift shift = load(o);
  std::size_t h = parse_horizon(o.horizon).left;
  auto res = check_irreducible(shift, h, o.gap_bound);
  Report r = verdict_report("irreducible", shift, res.verdict);
  r.parameters["horizon"] = h;
  r.parameters["gap_bound"] = o.gap_bound;
  Json conns = Json::array();
  for (const auto& c : res.connections)
    conns.push_back(Json{{"u", word_json(shift.alphabet(), c.u)},
                         {"w", word_json(shift.alphabet(), c.w)},
                         {"v", word_json(shift.alphabet(), c.v)}});
  r.body["connections"] = conns;
  r.body["max_gap"] = res.max_gap;
  return r;
}

Json cylinders_json(const CylinderMeasure& mu, std::size_t depth) {
  Json arr = Json::array();
  for (std::size_t k = 1; k <= depth; ++k)
    for (const auto& w : all_words(mu.alphabet().size(), k)) {
      Json c{{"word", format_word(mu.alphabet(), w)}, {"value", mu(w)}};
      if (auto q = mu.exact(w)) c["exact"] = std::to_string(q->numerator()) + "/" + std::to_string(q->denominator());
      arr.push_back(c);
    }
  return arr;
}

Report cmd_periodic(const Options& o) {
  Shift shift = load(o);
  auto pts = periodic_points(shift, o.period);
  Report r;
  r.command = "periodic";
  r.set_shift(shift);
  r.parameters["n"] = o.period;
  r.body["count"] = pts.points.size();
  r.body["points"] = words_json(shift.alphabet(), pts.points);
  r.body["exact"] = pts.exact;
  r.body["inconclusive"] = pts.inconclusive;
  r.body["trace"] = pts.trace ? Json(*pts.trace) : Json(nullptr);
  r.columns = {"n", "points", "trace", "trace_match"};
  bool match = !pts.trace || *pts.trace == pts.points.size();
  r.add_row({std::to_string(o.period), std::to_string(pts.points.size()),
             pts.trace ? std::to_string(*pts.trace) : "", format_bool(match)});
  if (!match) r.exit_status = 1;
  if (pts.inconclusive) r.exit_status = std::max(r.exit_status, 2);
  if (!pts.points.empty()) {
    auto mu = periodic_orbit_measure(shift.alphabet(), pts);
    std::size_t depth = std::min<std::size_t>(2, o.period);
    r.body["measure"] = cylinders_json(mu, depth);
    try {
      auto parry = sft_mme(shift);
      r.body["tv_parry_depth2"] = total_variation(mu, parry.measure, 2);
    } catch (const Error&) {
      r.body["tv_parry_depth2"] = nullptr;
    }
  }
  return r;
}

Report cmd_mme(const Options& o) {
  Shift shift = load(o);
  auto p = sft_mme(shift);
  Report r;
  r.command = "mme";
  r.set_shift(shift);
  const auto& a = shift.alphabet();
  r.body["states"] = words_json(a, p.matrix.states);
  r.body["adjacency"] = p.matrix.adjacency;
  r.body["lambda"] = p.matrix.lambda;
  r.body["log_lambda"] = p.log_lambda;
  r.body["markov_entropy"] = p.markov_entropy;
  r.body["residual"] = p.matrix.residual;
  r.body["iterations"] = p.matrix.iterations;
  r.body["stationary"] = p.stationary;
  r.body["transition"] = p.transition;
  r.body["measure"] = cylinders_json(p.measure, 2);
  r.columns = {"state", "stationary"};
  for (std::size_t i = 0; i < p.matrix.size(); ++i)
    r.add_row({format_word(a, p.matrix.states[i]), format_number(p.stationary[i])});
  if (std::abs(p.markov_entropy - p.log_lambda) > 1e-9) r.exit_status = 1;
  return r;
}

Report cmd_audit_bounds(const Options& o) {
  Shift shift = load(o);
  double h;
  bool exact;
  if (o.h) {
    h = *o.h;
    exact = false;
  } else if (auto e = exact_entropy(shift)) {
    h = *e;
    exact = true;
  } else {
    auto e2 = entropy_report(shift, o.n_max);
    h = e2.rows.empty() ? 0.0 : e2.rows.back().running_inf;
    exact = false;
  }
  std::optional<Word> w;
  if (!o.w.empty()) w = parse_word(shift.alphabet(), o.w);
  auto a = bound_audit(shift, o.m, h, exact, o.n_max, w);
  Report r;
  r.command = "audit-bounds";
  r.set_shift(shift);
  set_params(r, o, {"n_max"});
  r.parameters["m"] = o.m;
  if (w) r.parameters["w"] = o.w;
  r.body["h"] = h;
  r.body["h_exact"] = exact;
  r.body["approximate"] = a.approximate;
  r.body["violations"] = a.violations;
  r.columns = {"n", "count", "estimate", "bound", "pass"};
  Json upper = Json::array();
  for (const auto& u : a.upper) {
    upper.push_back(Json{{"n", u.n}, {"count", u.count}, {"log_bound", u.log_bound}, {"pass", u.pass}});
    double est = u.count ? std::log(static_cast<double>(u.count)) / static_cast<double>(u.n) : 0.0;
    r.add_row({std::to_string(u.n), std::to_string(u.count), format_number(est), format_number(u.bound),
               format_bool(u.pass)});
  }
  r.body["upper"] = upper;
  if (w) {
    Json suffix = Json::array();
    for (const auto& s : a.suffix) suffix.push_back(Json{{"n", s.n}, {"count", s.count}, {"ratio", s.ratio}});
    r.body["suffix"] = suffix;
    r.body["epsilon"] = a.epsilon ? Json(*a.epsilon) : Json(nullptr);
  }
  if (o.q1_depth > 0) {
    try {
      auto parry = sft_mme(shift);
      r.body["q1"] = fit_gibbs_q1(shift, parry.measure, h, o.q1_depth);
      r.body["q1_depth"] = o.q1_depth;
    } catch (const Error& e) {
      r.body["q1"] = nullptr;
      r.body["q1_error"] = e.what();
    }
  }
  if (a.violations > 0) r.exit_status = exact ? 1 : 2;
  else if (a.approximate || (w && !(a.epsilon && *a.epsilon > 0))) r.exit_status = 2;
  return r;
}

Report cmd_counterexample(const Options& o, const std::string& action) {
  auto spec = build_counterexample(o.n_symbols, o.n_max, o.radius);
  Report r;
  r.command = "counterexample " + action;
  r.set_shift(*spec.shift);
  r.parameters["N"] = o.n_symbols;
  r.parameters["n_max"] = o.n_max;
  r.parameters["radius"] = o.radius;
  r.body["note"] = spec.note;
  const auto& alpha = spec.shift->alphabet();
  if (action == "build") {
    Json sp = Json::array();
    for (const auto& s : spec.spanning)
      sp.push_back(Json{{"length", s.length},
                        {"radius", s.radius},
                        {"size", s.words.size()},
                        {"reference_bound", s.reference_bound},
                        {"verified", s.verified},
                        {"exhaustive", s.exhaustive}});
    r.body["spanning"] = sp;
    r.columns = {"n", "t_plus"};
    Json counts = Json::array();
    for (std::size_t n = 1; n <= o.n_max; ++n) {
      counts.push_back(Json{{"n", n}, {"t_plus", spec.t_plus[n].size()}});
      r.add_row({std::to_string(n), std::to_string(spec.t_plus[n].size())});
    }
    r.body["t_plus"] = counts;
    if (o.list) {
      Json words = Json::array();
      for (std::size_t n = 1; n <= o.n_max; ++n) words.push_back(words_json(alpha, spec.t_plus[n]));
      r.body["t_plus_words"] = words;
    }
    return r;
  }
  if (action == "audit") {
    auto a = audit_counterexample(spec);
    r.columns = {"n", "t_plus", "bound", "spanning_radius_achieved", "embed_ok"};
    Json rows = Json::array();
    for (const auto& x : a.rows) {
      rows.push_back(Json{{"n", x.n},
                          {"t_plus", x.t_plus},
                          {"t_minus", x.t_minus},
                          {"bound0", x.bound0},
                          {"bound0_ok", x.bound0_ok},
                          {"product_bound", x.product_bound},
                          {"product_ok", x.product_ok},
                          {"spanning_radius_required", x.spanning_radius_required},
                          {"spanning_radius_achieved", x.spanning_radius_achieved},
                          {"embed_ok", x.embed_ok}});
      r.add_row({std::to_string(x.n), std::to_string(x.t_plus), format_number(x.bound0),
                 std::to_string(x.spanning_radius_achieved), format_bool(x.embed_ok)});
    }
    r.body["rows"] = rows;
    r.body["prefix_closed"] = a.prefix_closed;
    if (a.prefix_violation) r.body["prefix_violation"] = word_json(alpha, *a.prefix_violation);
    r.body["sign_symmetric"] = a.sign_symmetric;
    r.body["spanning_ok"] = a.spanning_ok;
    r.body["bound0_ok"] = a.bound0_ok;
    r.body["embed_ok"] = a.embed_ok;
    r.body["alpha_sum"] = a.alpha_sum;
    r.body["alpha_below_one"] = a.alpha_below_one;
    Json ent = Json::array();
    for (auto [n, e] : a.entropy) ent.push_back(Json{{"n", n}, {"estimate", e}});
    r.body["entropy"] = ent;
    r.body["log_N"] = a.log_n;
    r.body["inconclusive"] = a.inconclusive;
    bool ok = a.prefix_closed && a.sign_symmetric && a.spanning_ok && a.bound0_ok && a.embed_ok;
    r.exit_status = !ok ? 1 : a.inconclusive ? 2 : 0;
    return r;
  }
  if (action == "ras") {
    auto h = parse_horizon(o.horizon);
    auto v = check_ras_loglog(spec, h);
    Report vr = verdict_report(r.command, *spec.shift, v);
    vr.parameters = r.parameters;
    vr.parameters["horizon"] = horizon_json(h);
    vr.body["note"] = spec.note;
    return vr;
  }
  throw InputError("unknown counterexample action '" + action + "'");
}

void emit(const Report& r, const Options& o, std::ostream& out) {
  std::string text = o.format == "csv" ? r.to_csv() : r.to_json();
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite-horizon symbolic dynamics toolkit", "symdyn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;
  std::function<Report()> action;

  auto* enumerate = app.add_subcommand("enumerate", "list or count L_n for n <= n-max");
  common(enumerate, o);
  enumerate->add_flag("--list", o.list, "include the words");
  enumerate->callback([&] { action = [&] { return cmd_enumerate(o); }; });

  auto* entropy = app.add_subcommand("entropy", "per-n entropy estimates");
  common(entropy, o);
  entropy->callback([&] { action = [&] { return cmd_entropy(o); }; });

  auto* spec = app.add_subcommand("check-spec", "specification with a fixed gap");
  common(spec, o);
  spec->add_option("--tau", o.tau, "connector length");
  spec->callback([&] { action = [&] { return cmd_check_spec(o); }; });

  auto* as = app.add_subcommand("check-as", "almost specification with k segments");
  common(as, o);
  as->add_option("--segments", o.segments, "number of segments k");
  as->callback([&] { action = [&] { return cmd_almost(o, AlmostSpecMode::AS); }; });

  auto* las = app.add_subcommand("check-las", "left almost specification");
  common(las, o);
  las->callback([&] { action = [&] { return cmd_almost(o, AlmostSpecMode::LAS); }; });

  auto* ras = app.add_subcommand("check-ras", "right almost specification");
  common(ras, o);
  ras->callback([&] { action = [&] { return cmd_almost(o, AlmostSpecMode::RAS); }; });

  auto* mm = app.add_subcommand("min-mistakes", "fewest changes to one word so the pair concatenates");
  common(mm, o);
  mm->add_option("--w1", o.w1)->required();
  mm->add_option("--w2", o.w2)->required();
  mm->add_option("--side", o.side, "which word may change: left or right");
  mm->callback([&] { action = [&] { return cmd_min_mistakes(o); }; });

  auto* glue = app.add_subcommand("glue", "gluing words u, u' and v with closure checks");
  common(glue, o);
  glue->add_option("--depth", o.depth, "longest extension of w and v");
  glue->add_option("--samples", o.samples, "closure-check instances");
  glue->add_option("--uu-max", o.uu_max, "longest x and tail of z in the u/u' check");
  glue->callback([&] { action = [&] { return cmd_glue(o); }; });

  auto* dec = app.add_subcommand("decompose", "classify a word, or sweep obstruction counts to n-max");
  common(dec, o);
  dec->add_option("--depth", o.depth, "gluing search depth");
  dec->add_option("--word", o.word, "word to classify");
  dec->callback([&] { action = [&] { return cmd_decompose(o); }; });

  auto* mc = app.add_subcommand("measure-center", "approximate the language of the measure center");
  common(mc, o);
  mc->add_option("--search-horizon", o.search_horizon, "longest witness word searched");
  mc->callback([&] { action = [&] { return cmd_measure_center(o); }; });

  auto* irr = app.add_subcommand("irreducible", "irreducibility with connector witnesses");
  common(irr, o);
  irr->add_option("--gap-bound", o.gap_bound, "longest connector tried");
  irr->callback([&] { action = [&] { return cmd_irreducible(o); }; });

  auto* per = app.add_subcommand("periodic", "periodic points and the periodic-orbit measure");
  common(per, o);
  per->add_option("--n", o.period, "period");
  per->callback([&] { action = [&] { return cmd_periodic(o); }; });

  auto* mme = app.add_subcommand("mme", "Parry measure of an SFT");
  common(mme, o);
  mme->callback([&] { action = [&] { return cmd_mme(o); }; });

  auto* audit = app.add_subcommand("audit-bounds", "upper counting bound, suffix counts and Gibbs fit");
  common(audit, o);
  audit->add_option("--m", o.m, "constant mistake budget");
  audit->add_option("--entropy", o.h, "entropy value (default: exact if known, else running infimum)");
  audit->add_option("--w", o.w, "suffix word for the lower-bound sweep");
  audit->add_option("--q1-depth", o.q1_depth, "fit the Gibbs constant of the Parry measure to this depth");
  audit->callback([&] { action = [&] { return cmd_audit_bounds(o); }; });

  auto* cx = app.add_subcommand("counterexample", "the double-log coded shift");
  cx->require_subcommand(1);
  for (const char* name : {"build", "audit", "ras"}) {
    auto* s = cx->add_subcommand(name);
    common(s, o, false);
    s->add_option("--N", o.n_symbols, "symbols per sign");
    s->add_option("--radius", o.radius, "spanning radius of each block");
    if (std::string(name) == "build") s->add_flag("--list", o.list, "include T^+ words");
    std::string act = name;
    s->callback([&o, &action, act, s] {
      if (s->count("--n-max") == 0) o.n_max = 8;
      action = [&o, act] { return cmd_counterexample(o, act); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "symdyn: " << e.what() << "\n";
    return 3;
  }

  try {
    if (o.threads) set_thread_count(o.threads);
    if (!o.cache_dir.empty()) CountCache::instance().set_directory(o.cache_dir);
    if (!action) throw InputError("no command given");
    Report r = action();
    emit(r, o, out);
    return r.exit_status;
  } catch (const InputError& e) {
    err << "symdyn: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "symdyn: " << e.what() << "\n";
    return 3;
  } catch (const SpecError& e) {
    err << "symdyn: " << e.what() << "\n";
    return 3;
  } catch (const ReducibleShift& e) {
    err << "symdyn: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "symdyn: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace symdyn
