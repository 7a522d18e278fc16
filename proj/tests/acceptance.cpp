// One PASS/FAIL line per acceptance criterion. `--criterion N` runs one.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "symdyn/audit.hpp"
#include "symdyn/cli.hpp"
#include "symdyn/counterexample.hpp"
#include "symdyn/entropy.hpp"
#include "symdyn/language.hpp"
#include "symdyn/measures.hpp"
#include "symdyn/report.hpp"
#include "symdyn/spec_io.hpp"
#include "symdyn/structure.hpp"
#include "symdyn/word.hpp"

using namespace symdyn;

namespace {

const double kLogPhi = std::log((1 + std::sqrt(5.0)) / 2);

std::string fixture(const std::string& name) { return std::string(SYMDYN_FIXTURES) + "/" + name + ".yaml"; }
Shift load(const std::string& name) { return make_shift(load_shift_spec(fixture(name))); }

// Collects sub-check outcomes; a criterion passes when all of them do.
struct Checks {
  bool ok = true;
  std::ostringstream log;
  void expect(bool cond, const std::string& what) {
    if (!cond) ok = false;
    log << "    " << (cond ? "ok   " : "FAIL ") << what << "\n";
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string verdict(const PropertyVerdict& v) { return to_string(v.status); }

void golden_counts(Checks& c) {
  auto t0 = std::chrono::steady_clock::now();
  auto gm = load("golden_mean");
  auto m = transfer_matrix(gm);
  auto paths = path_counts(m, 25);
  auto counts = count_language(gm, 25);
  bool same = true;
  for (std::size_t n = 1; n <= 25; ++n) same = same && counts[n].certain == paths[n] && counts[n].possible == paths[n];
  c.expect(same, "|L_n| equals the path count for n <= 25");
  c.expect(counts[10].certain == 144, "|L_10| = " + std::to_string(counts[10].certain));
  // Fibonacci recurrence as a second check on the counts.
  bool fib = counts[1].certain == 2 && counts[2].certain == 3;
  for (std::size_t n = 3; n <= 25; ++n) fib = fib && counts[n].certain == counts[n - 1].certain + counts[n - 2].certain;
  c.expect(fib, "counts follow the Fibonacci recurrence");
  auto rep = entropy_report(gm, 25);
  bool bracket = true;
  for (const auto& r : rep.rows) bracket = bracket && r.estimate >= kLogPhi - 1e-12;
  c.expect(bracket, "every estimate is at least ln phi");
  double gap = rep.rows[24].estimate - kLogPhi;
  c.expect(gap <= 0.02, "estimate at n=25 minus ln phi = " + format_number(gap));
  double t = seconds_since(t0);
  c.expect(t < 10, "runtime " + format_number(t) + " s < 10 s");
}

void upper_bound(Checks& c) {
  auto gm = load("golden_mean");
  auto exact = exact_entropy(gm);
  c.expect(exact && std::abs(*exact - kLogPhi) < 1e-12, "exact entropy is ln lambda");
  auto a = bound_audit(gm, 1, *exact, true, 30);
  c.expect(a.upper.size() == 30, "30 rows audited");
  c.expect(a.violations == 0, "violations: " + std::to_string(a.violations));
}

// Implication matrix over the irreducible fixtures. A premise that does not
// hold, or is inconclusive, makes the implication vacuous; a conclusion must
// Hold whenever its premise does.
void implications(Checks& c) {
  auto t0 = std::chrono::steady_clock::now();
  const Horizon h{8, 8};
  auto beta = load("beta_golden");
  auto v = check_las(beta, MistakeFunction::constant(1), h);
  c.expect(v.holds(), "beta (golden expansion) LAS(g=1): " + verdict(v));

  const std::vector<std::string> names = {"full2",      "golden_mean",  "beta_golden",    "bounded_density_sqrt",
                                          "s_gap_even", "golden_squared", "coded_even", "at_most_one_one"};
  std::size_t checked = 0, green = 0;
  auto record = [&](const std::string& name, const std::string& what, const PropertyVerdict& premise,
                    const std::function<PropertyVerdict()>& conclusion) {
    ++checked;
    if (!premise.holds()) {
      ++green;
      c.log << "    vacuous " << name << ": " << what << " (premise " << verdict(premise) << ")\n";
      return;
    }
    auto r = conclusion();
    if (r.holds()) ++green;
    c.expect(r.holds(), name + ": " + what + " -> " + verdict(r));
  };
  for (const auto& name : names) {
    auto s = load(name);
    for (std::size_t tau : {1u, 2u}) {
      auto spec = check_specification(s, tau, h);
      record(name, "spec(" + std::to_string(tau) + ") => LAS(g=" + std::to_string(tau) + ")", spec,
             [&] { return check_las(s, MistakeFunction::constant(tau), h); });
    }
    for (const char* g : {"const:1", "const:2"}) {
      auto mf = MistakeFunction::parse(g);
      auto las = check_las(s, mf, h);
      record(name, std::string("LAS(") + g + ") => AS(" + g + ", k=3)", las, [&] { return check_as(s, mf, h, 3); });
    }
    if (check_irreducible(s, 4).verdict.holds()) {
      // Three segments: the contrapositive argument concatenates u, v w U, V.
      auto as3 = check_as(s, MistakeFunction::constant(1), h, 3);
      record(name, "AS(g=1, k=3) => LAS or RAS", as3, [&] {
        auto l = check_las(s, MistakeFunction::constant(1), h);
        return l.holds() ? l : check_ras(s, MistakeFunction::constant(1), h);
      });
    }
  }
  c.expect(green == checked, "matrix green: " + std::to_string(green) + "/" + std::to_string(checked));
  double t = seconds_since(t0);
  c.expect(t < 60, "runtime " + format_number(t) + " s < 60 s");
}

void at_most_one(Checks& c) {
  auto s = load("at_most_one_one");
  auto las = check_las(s, MistakeFunction::constant(1), {8, 8});
  c.expect(las.holds(), "LAS(g=1): " + verdict(las));
  auto irr = check_irreducible(s, 8);
  c.expect(irr.verdict.fails() && irr.verdict.witness == std::vector<Word>{Word{1}, Word{1}},
           "irreducibility fails with witness (1,1): " + verdict(irr.verdict));
  auto mc = measure_center_approx(s, MistakeFunction::constant(1), 12, 26);
  bool zeros = mc.levels.size() == 12 && !mc.inconclusive;
  for (const auto& lvl : mc.levels) zeros = zeros && lvl.kept == std::vector<Word>{Word(lvl.n, 0)};
  c.expect(zeros, "measure center approximation is {0^n} for n <= 12");
}

void bounded_density(Checks& c) {
  auto s = load("bounded_density_sqrt");
  auto las = check_las(s, MistakeFunction::sqrt_ceil(), {8, 8});
  c.expect(las.holds(), "LAS(ceil sqrt) at (8,8): " + verdict(las));
  auto irr = check_irreducible(s, 5);
  bool zero_blocks = !irr.connections.empty();
  for (const auto& conn : irr.connections)
    zero_blocks = zero_blocks && std::all_of(conn.w.begin(), conn.w.end(), [](Symbol x) { return x == 0; });
  c.expect(irr.verdict.holds(), "irreducible at horizon 5: " + verdict(irr.verdict));
  c.expect(zero_blocks, "every connector is a block of zeros");
  auto rep = entropy_report(s, 40);
  double h40 = rep.rows[39].estimate;
  bool decreasing = true;
  for (std::size_t n = 31; n <= 40; ++n) decreasing = decreasing && rep.rows[n - 1].estimate < rep.rows[n - 2].estimate;
  c.expect(decreasing, "estimates strictly decrease over n = 30..40");
  c.expect(h40 < 0.35, "estimate at n=40 = " + format_number(h40) + " < 0.35");
}

void products_and_factors(Checks& c) {
  auto prod = load("golden_squared");
  auto v = check_las(prod, MistakeFunction::constant(2), {6, 6});
  c.expect(v.holds(), "product of two LAS(1) shifts has LAS(2): " + verdict(v));
  auto sum = load("beta_sum");
  auto w = check_las(sum, MistakeFunction::constant(1), {6, 6});
  c.expect(w.holds(), "sum factor of two beta shifts has LAS(1): " + verdict(w));
}

void periodic(Checks& c) {
  auto gm = load("golden_mean");
  auto p = periodic_points(gm, 5);
  c.expect(p.points.size() == 11 && p.trace && *p.trace == 11, "|Per_5| = 11 = trace");
  // Brute force: all binary words of length 5 whose cyclic closure avoids 11.
  std::int64_t points = 0, zeros = 0;
  for (const auto& w : all_words(2, 5)) {
    bool ok = true;
    for (std::size_t i = 0; i < 5; ++i) ok = ok && !(w[i] == 1 && w[(i + 1) % 5] == 1);
    if (!ok) continue;
    ++points;
    zeros += std::count(w.begin(), w.end(), 0);
  }
  auto mu = periodic_orbit_measure(gm, 5);
  auto exact = mu.exact(Word{0});
  c.expect(exact && *exact == Rational(zeros, 5 * points) && *exact == Rational(40, 55), "mu_5([0]) = 40/55");
  auto parry = sft_mme(gm);
  double tv5 = total_variation(periodic_orbit_measure(gm, 5), parry.measure, 2);
  double tv20 = total_variation(periodic_orbit_measure(gm, 20), parry.measure, 2);
  c.expect(tv20 <= 0.05, "TV at n=20 = " + format_number(tv20) + " <= 0.05");
  c.expect(tv20 < tv5, "TV at n=20 below TV at n=5 = " + format_number(tv5));
}

void gluing(Checks& c) {
  for (const std::string name : {"full2", "golden_mean", "beta_golden"}) {
    auto s = load(name);
    auto g = build_gluing(s, 6);
    c.expect(g.stabilized, name + ": gluing stabilizes at 6");
    if (!g.stabilized) continue;
    auto uu = check_uu_prime(s, g, 6, 6);
    c.expect(!uu.counterexample && !uu.inconclusive,
             name + ": u u' substitution over " + std::to_string(uu.instances) + " instances");
    auto rows = obstruction_entropies(s, g, 12);
    bool partition = true, bbound = true;
    for (const auto& r : rows) {
      partition = partition && r.decomposable + r.b == r.total;
      bbound = bbound && r.bbound_ok;
    }
    c.expect(partition, name + ": |L_n| = decomposable + B for n <= 12");
    c.expect(bbound, name + ": B-count bound for n <= 12");
    if (name == "golden_mean") c.expect(gluing_gcd(s, g, 12) == 1, name + ": gcd = 1");
  }
}

void counterexample(Checks& c) {
  auto spec = build_counterexample(4, 8);
  auto a = audit_counterexample(spec);
  c.expect(a.prefix_closed, "T+ prefix-closed");
  c.expect(a.spanning_ok, "T_n spanning within 1 + 2 floor(log2 log2 n)");
  c.expect(a.bound0_ok, "|T+_n| <= N^n / N for n <= 8");
  c.expect(a.embed_ok, "both one-sign full shifts embed");
  auto ras = check_ras_loglog(spec, {6, 6});
  c.expect(ras.holds(), "RAS(loglog) at (6,6): " + verdict(ras));
  const char* argv[] = {"symdyn", "counterexample", "audit", "--N", "4"};
  std::ostringstream out, err;
  run_cli(5, argv, out, err);
  c.expect(out.str().find("N > 2^17 + 4") != std::string::npos, "report states the N > 2^17 + 4 requirement is not met");
}

void extendable_cores(Checks& c) {
  for (const std::string name : {"golden_mean", "at_most_one_one"}) {
    auto s = load(name);
    auto seq = core_sequence(s.oracle(), 20, 4);
    auto count = count_language(s, 20)[20].certain;
    double h_core = std::log(static_cast<double>(seq.core.size())) / 20;
    double h_coll = std::log(static_cast<double>(count)) / 20;
    c.expect(std::abs(h_core - h_coll) <= 0.02,
             name + ": core entropy " + format_number(h_core) + " vs collection " + format_number(h_coll));
    bool nested = true;
    for (std::size_t j = 1; j < seq.sizes.size(); ++j) nested = nested && seq.sizes[j] <= seq.sizes[j - 1];
    c.expect(nested, name + ": cores nested");
    c.expect(seq.stabilized_at.has_value(), name + ": cores stabilize");
  }
}

std::string run_capture(std::vector<std::string> args) {
  args.insert(args.begin(), "symdyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

void determinism(Checks& c) {
  auto f = [](const char* n) { return fixture(n); };
  std::vector<std::vector<std::string>> cmds = {
      {"enumerate", "--spec", f("golden_mean"), "--n-max", "10", "--list"},
      {"entropy", "--spec", f("beta_sum"), "--n-max", "10"},
      {"check-spec", "--spec", f("at_most_one_one"), "--tau", "2", "--horizon", "4,4"},
      {"check-as", "--spec", f("golden_mean"), "--horizon", "5,5", "--segments", "3"},
      {"check-las", "--spec", f("bounded_density_sqrt"), "--g", "sqrt", "--horizon", "6,6"},
      {"check-ras", "--spec", f("beta_golden"), "--horizon", "6,6"},
      {"min-mistakes", "--spec", f("golden_mean"), "--w1", "0101", "--w2", "1010"},
      {"glue", "--spec", f("beta_golden"), "--samples", "500"},
      {"decompose", "--spec", f("golden_mean"), "--n-max", "10"},
      {"measure-center", "--spec", f("at_most_one_one"), "--n-max", "6"},
      {"irreducible", "--spec", f("bounded_density_sqrt"), "--horizon", "5,5"},
      {"periodic", "--spec", f("golden_mean"), "--n", "8"},
      {"mme", "--spec", f("golden_squared")},
      {"audit-bounds", "--spec", f("golden_mean"), "--m", "1", "--w", "0", "--n-max", "20"},
      {"counterexample", "audit", "--N", "3"},
      {"counterexample", "build", "--N", "4", "--list"},
  };
  std::size_t same = 0;
  for (const auto& cmd : cmds) {
    for (const char* fmt : {"json", "csv"}) {
      auto base = cmd;
      base.insert(base.end(), {"--format", fmt});
      auto one = base, many = base;
      one.insert(one.end(), {"--threads", "1"});
      many.insert(many.end(), {"--threads", "4"});
      auto a = run_capture(base), b = run_capture(base), x = run_capture(one), y = run_capture(many);
      bool ok = a == b && x == y && a == x;
      same += ok;
      if (!ok) c.expect(false, cmd[0] + " " + fmt + " differs between runs");
    }
  }
  c.expect(same == 2 * cmds.size(), "identical reports: " + std::to_string(same) + "/" + std::to_string(2 * cmds.size()));
}

struct Criterion {
  const char* title;
  void (*run)(Checks&);
};

const Criterion kCriteria[] = {
    {"golden-mean counts, path counts and entropy", golden_counts},
    {"upper counting bound audit, m = 1", upper_bound},
    {"LAS / AS / implication matrix at (8,8)", implications},
    {"at-most-one-1: LAS, reducibility witness, measure center", at_most_one},
    {"bounded density with ceil sqrt: LAS, irreducibility, entropy decay", bounded_density},
    {"products and sum factors keep LAS", products_and_factors},
    {"periodic orbit measures converge to the Parry measure", periodic},
    {"gluing construction and obstruction counts", gluing},
    {"double-log coded counterexample", counterexample},
    {"extendable cores match collection entropy", extendable_cores},
    {"byte-identical reports", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run one criterion (1-11)")->check(CLI::Range(1, 11));
  app.add_flag("-v,--verbose", verbose, "print sub-checks for passing criteria too");
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (int i = 1; i <= 11; ++i) {
    if (only && i != only) continue;
    const auto& crit = kCriteria[i - 1];
    Checks c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double t = seconds_since(t0);
    std::cout << "criterion " << i << ": " << (c.ok ? "PASS" : "FAIL") << "  " << crit.title << "  ("
              << format_number(std::round(t * 100) / 100) << " s)\n";
    if (!c.ok || verbose) std::cout << c.log.str();
    failures += !c.ok;
  }
  return failures == 0 ? 0 : 1;
}
