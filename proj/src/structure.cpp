#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "symdyn/errors.hpp"
#include "symdyn/word.hpp"
#include "symdyn/language.hpp"
#include "symdyn/structure.hpp"
#include "symdyn/util.hpp"

namespace symdyn {

namespace {

std::vector<Word> d_set(const LanguageOracle& oracle, const std::vector<Word>& ball, const Word& w, const Word& v,
                        bool& unknown) {
  std::vector<Word> out;
  for (const auto& yp : ball) {
    Membership m = oracle.contains(concat(w, yp, v));
    if (m.is_unknown()) unknown = true;
    if (m.is_in()) out.push_back(yp);
  }
  return out;
}

void finish(GluingData& g) {
  g.u = concat(g.w, g.y);
  if (!g.d.empty()) {
    g.y_prime = g.d.front();
    g.u_prime = concat(g.w, g.y_prime);
  }
}

}  // namespace

GluingData build_gluing(const Shift& shift, std::size_t horizon) {
  GluingData g;
  g.horizon = horizon;
  const auto& oracle = shift.oracle();
  auto est = estimate_i(shift, {horizon, horizon});
  g.i = est.i;
  g.y = est.y;
  g.v0 = est.v0;
  if (est.inconclusive) {
    g.reason = "estimate of i is inconclusive at this horizon";
    return g;
  }
  if (est.y.empty()) {
    g.reason = "the language has no nonempty words";
    return g;
  }
  auto slices = enumerate_language_upto(shift, horizon);
  auto ball = hamming_ball(shift, g.y, g.i);
  bool unknown = false;
  g.v = g.v0;
  g.d = d_set(oracle, ball, g.w, g.v, unknown);
  g.chain.push_back({g.w, g.v, g.d});
  if (g.d.empty()) {
    g.reason = "D(w, v) is empty for the initial pair";
    finish(g);
    return g;
  }

  for (;;) {
    bool stepped = false;
    const std::size_t room_w = horizon - std::min(horizon, g.w.size());
    const std::size_t room_v = horizon - std::min(horizon, g.v.size());
    for (std::size_t total = 1; total <= room_w + room_v && !stepped; ++total)
      for (std::size_t dx = 0; dx <= std::min(total, room_w) && !stepped; ++dx) {
        std::size_t dz = total - dx;
        if (dz > room_v) continue;
        for (const auto& x : slices[dx].words) {
          Word wp = concat(x, g.w);
          if (dx > 0 && !oracle.contains(concat(wp, g.y)).is_in()) continue;
          for (const auto& z : slices[dz].words) {
            Word vp = concat(g.v, z);
            if (dz > 0 && !oracle.contains(vp).is_in()) continue;
            auto dp = d_set(oracle, ball, wp, vp, unknown);
            if (dp == g.d) continue;
            if (!std::includes(g.d.begin(), g.d.end(), dp.begin(), dp.end()))
              throw Error("gluing construction: D(w', v') is not contained in D(w, v)");
            if (dp.empty()) {
              g.reason = "D(w, v) became empty; the horizon is too small for the estimated i";
              finish(g);
              return g;
            }
            g.w = std::move(wp);
            g.v = std::move(vp);
            g.d = std::move(dp);
            g.chain.push_back({g.w, g.v, g.d});
            stepped = true;
            break;
          }
          if (stepped) break;
        }
      }
    if (!stepped) break;
  }
  finish(g);
  if (unknown) {
    g.reason = "membership unknown within the search horizon";
    return g;
  }
  g.stabilized = true;
  return g;
}

GluingData gluing_from_words(const Shift& shift, Word u, Word u_prime, Word v) {
  (void)shift;
  GluingData g;
  g.stabilized = true;
  g.u = std::move(u);
  g.u_prime = std::move(u_prime);
  g.v = std::move(v);
  g.y = g.u;
  g.y_prime = g.u_prime;
  g.d = {g.u_prime};
  return g;
}

std::string to_string(Decomposition::Kind k) {
  switch (k) {
    case Decomposition::Kind::G: return "G";
    case Decomposition::Kind::CpGCs: return "CpGCs";
    case Decomposition::Kind::B: return "B";
  }
  return "?";
}

bool in_g(const Shift& shift, const GluingData& glue, WordView w) {
  if (w.size() < glue.v.size() || !std::equal(glue.v.begin(), glue.v.end(), w.begin())) return false;
  return shift.oracle().contains(concat(w, glue.u)).is_in();
}

bool in_cp(const GluingData& glue, WordView w) { return !is_subword(glue.v, w); }

bool in_cs(const GluingData& glue, WordView w) {
  if (w.size() < glue.u.size() || !std::equal(glue.u.begin(), glue.u.end(), w.begin())) return false;
  return !find_subword(glue.u, w, 1).has_value();
}

bool in_c_prime(const GluingData& glue, WordView w) { return !is_subword(glue.u, w); }

namespace {

std::vector<std::size_t> occurrences(WordView needle, WordView hay) {
  std::vector<std::size_t> out;
  std::size_t from = 0;
  while (auto p = find_subword(needle, hay, from)) {
    out.push_back(*p);
    from = *p + 1;
  }
  return out;
}

Word slice(WordView w, std::size_t a, std::size_t b) { return Word(w.begin() + a, w.begin() + b); }

}  // namespace

Decomposition classify_word(const Shift& shift, const GluingData& glue, WordView w) {
  Decomposition d;
  if (glue.v.empty() || glue.u.empty()) throw InputError("gluing data has an empty u or v");
  if (in_g(shift, glue, w)) {
    d.kind = Decomposition::Kind::G;
    d.core.assign(w.begin(), w.end());
    return d;
  }
  auto pv = occurrences(glue.v, w);
  auto pu = occurrences(glue.u, w);
  const std::size_t n = w.size();
  for (std::size_t p : pv) {
    // The prefix w[0, p) must not contain v.
    if (pv.front() + glue.v.size() <= p) break;
    if (!pu.empty() && pu.back() >= p + glue.v.size()) {
      std::size_t q = pu.back();
      if (in_g(shift, glue, slice(w, p, q))) {
        d.kind = Decomposition::Kind::CpGCs;
        d.prefix = slice(w, 0, p);
        d.core = slice(w, p, q);
        d.suffix = slice(w, q, n);
        return d;
      }
    }
    if (in_g(shift, glue, slice(w, p, n))) {
      d.kind = Decomposition::Kind::CpGCs;
      d.prefix = slice(w, 0, p);
      d.core = slice(w, p, n);
      return d;
    }
  }
  return d;
}

std::vector<ObstructionRow> obstruction_entropies(const Shift& shift, const GluingData& glue, std::size_t n_max) {
  if (glue.v.empty() || glue.u.empty()) throw InputError("gluing data has an empty u or v");
  if (!shift.contains(glue.v).is_in() || !shift.contains(glue.u).is_in())
    throw InputError("gluing words u and v must occur in the language");
  auto slices = enumerate_language_upto(shift, n_max);
  std::vector<ObstructionRow> rows;
  std::vector<std::uint64_t> cp_counts{1}, cprime_counts{1};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto& words = slices[n].words;
    struct Flags {
      bool g, cp, cs, cprime, decomposable;
    };
    std::vector<Flags> flags(words.size());
    parallel_for(words.size(), [&](std::size_t k) {
      const auto& w = words[k];
      auto d = classify_word(shift, glue, w);
      flags[k] = {d.kind == Decomposition::Kind::G, in_cp(glue, w), in_cs(glue, w), in_c_prime(glue, w),
                  d.kind != Decomposition::Kind::B};
    });
    ObstructionRow r;
    r.n = n;
    r.total = words.size();
    for (const auto& f : flags) {
      r.g += f.g;
      r.cp += f.cp;
      r.cs += f.cs;
      r.c_prime += f.cprime;
      r.decomposable += f.decomposable;
      r.b += !f.decomposable;
      r.obstructions += (f.cp || f.cs || !f.decomposable);
    }
    cp_counts.push_back(r.cp);
    cprime_counts.push_back(r.c_prime);
    double bound = static_cast<double>(r.c_prime);
    if (n >= glue.u.size())
      for (std::size_t i = 0; i <= n - glue.u.size(); ++i)
        bound += static_cast<double>(cp_counts[i]) * static_cast<double>(cprime_counts[n - i]);
    r.bbound = bound;
    r.bbound_ok = static_cast<double>(r.b) <= bound;
    auto est = [n](std::uint64_t c) { return c == 0 ? 0.0 : std::log(static_cast<double>(c)) / static_cast<double>(n); };
    r.h_total = est(r.total);
    r.h_obstructions = est(r.obstructions);
    rows.push_back(r);
  }
  return rows;
}

UuPrimeCheck check_uu_prime(const Shift& shift, const GluingData& glue, std::size_t max_x, std::size_t max_z) {
  UuPrimeCheck out;
  const auto& oracle = shift.oracle();
  auto slices = enumerate_language_upto(shift, std::max(max_x, max_z));
  // z ranges over v t with |t| <= max_z.
  std::vector<Word> zs;
  for (std::size_t len = 0; len <= max_z; ++len)
    for (const auto& t : slices[len].words) {
      Word z = concat(glue.v, t);
      Membership m = oracle.contains(z);
      if (m.is_unknown()) out.inconclusive = true;
      if (m.is_in()) zs.push_back(std::move(z));
    }
  for (std::size_t len = 0; len <= max_x; ++len)
    for (const auto& x : slices[len].words) {
      Membership mx = oracle.contains(concat(x, glue.u));
      if (mx.is_unknown()) out.inconclusive = true;
      if (!mx.is_in()) continue;
      Word xu = concat(x, glue.u_prime);
      for (const auto& z : zs) {
        ++out.instances;
        Membership m = oracle.contains(concat(xu, z));
        if (m.is_unknown()) out.inconclusive = true;
        if (m.is_out()) {
          out.counterexample = std::make_pair(x, z);
          return out;
        }
      }
    }
  return out;
}

namespace {

// Random walk in the language; each step picks uniformly among the symbols
// that keep the word In.
Word random_walk(const LanguageOracle& oracle, std::size_t length, std::mt19937_64& rng) {
  Word x;
  const std::size_t a = oracle.alphabet().size();
  std::vector<Symbol> options;
  while (x.size() < length) {
    options.clear();
    for (Symbol s = 0; s < a; ++s) {
      x.push_back(s);
      if (oracle.contains_extension(x).is_in()) options.push_back(s);
      x.pop_back();
    }
    if (options.empty()) break;
    x.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
  }
  return x;
}

PropertyVerdict make_verdict(std::string name, std::size_t window) {
  PropertyVerdict v;
  v.property = std::move(name);
  v.horizon = {window, window};
  return v;
}

}  // namespace

ClosureReport check_closure_conditions(const Shift& shift, const GluingData& glue, std::size_t samples,
                                       std::size_t n_max, std::uint64_t seed) {
  if (glue.v.empty() || glue.u.empty()) throw InputError("gluing data has an empty u or v");
  ClosureReport rep;
  const std::size_t window = 2 * n_max;
  rep.window = window;
  rep.spec_i = make_verdict("[I] G has specification with gluing word u'", n_max);
  rep.inter_iiia = make_verdict("[IIIa] intersections of G words", window);
  rep.union_iiib = make_verdict("[IIIb] unions of G words", window);
  std::mt19937_64 rng(seed);

  // [I]: w u' w' in G for w, w' in G_{<=n_max}.
  auto slices = enumerate_language_upto(shift, n_max);
  std::vector<Word> gs;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (const auto& w : slices[n].words)
      if (in_g(shift, glue, w)) gs.push_back(w);
  auto check_pair = [&](const Word& a, const Word& b) {
    ++rep.spec_i.instances;
    Word joined = concat(a, glue.u_prime, b);
    if (!in_g(shift, glue, joined)) {
      rep.spec_i.status = PropertyVerdict::Status::FailsWith;
      rep.spec_i.witness = {a, glue.u_prime, b};
      rep.spec_i.reason = "w u' w' is not in G";
      return false;
    }
    return true;
  };
  if (!gs.empty()) {
    if (gs.size() * gs.size() <= samples) {
      for (const auto& a : gs) {
        bool ok = true;
        for (const auto& b : gs)
          if (!(ok = check_pair(a, b))) break;
        if (!ok) break;
      }
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, gs.size() - 1);
      for (std::size_t s = 0; s < samples; ++s)
        if (!check_pair(gs[pick(rng)], gs[pick(rng)])) break;
    }
  }

  // [IIIa]/[IIIb]: every index tuple inside sampled windows.
  const std::size_t L = glue.v.size();
  const std::size_t max_walks = 4096;
  for (std::size_t walk = 0; walk < max_walks; ++walk) {
    if (rep.inter_iiia.instances >= samples && rep.union_iiib.instances >= samples) break;
    if (!rep.inter_iiia.holds() && !rep.union_iiib.holds()) break;
    Word x = random_walk(shift.oracle(), window, rng);
    const std::size_t W = x.size();
    // inG[a][b] for the inclusive interval x[a..b].
    std::vector<std::vector<char>> ing(W, std::vector<char>(W, 0));
    for (std::size_t a = 0; a < W; ++a)
      for (std::size_t b = a; b < W; ++b) ing[a][b] = in_g(shift, glue, slice(x, a, b + 1));
    for (std::size_t i = 0; i < W; ++i)
      for (std::size_t j = i; j < W; ++j)
        for (std::size_t k = j + L; k < W; ++k) {
          if (!ing[i][k]) continue;
          for (std::size_t l = k; l < W; ++l) {
            if (!ing[j][l]) continue;
            if (rep.inter_iiia.holds()) {
              ++rep.inter_iiia.instances;
              if (!ing[j][k]) {
                rep.inter_iiia.status = PropertyVerdict::Status::FailsWith;
                rep.inter_iiia.witness = {x, slice(x, i, k + 1), slice(x, j, l + 1), slice(x, j, k + 1)};
                rep.inter_iiia.reason = "x[j,k] is not in G";
              }
            }
            if (rep.union_iiib.holds())
              for (std::size_t a = 0; a <= i; ++a) {
                if (!ing[a][l]) continue;
                ++rep.union_iiib.instances;
                if (!ing[i][l]) {
                  rep.union_iiib.status = PropertyVerdict::Status::FailsWith;
                  rep.union_iiib.witness = {x, slice(x, a, l + 1), slice(x, i, l + 1)};
                  rep.union_iiib.reason = "x[i,l] is not in G";
                  break;
                }
              }
          }
        }
  }
  return rep;
}

std::size_t gluing_gcd(const Shift& shift, const GluingData& glue, std::size_t n_max) {
  auto slices = enumerate_language_upto(shift, n_max);
  std::size_t g = 0;
  for (std::size_t n = 1; n <= n_max && g != 1; ++n)
    for (const auto& w : slices[n].words)
      if (in_g(shift, glue, w)) {
        g = std::gcd(g, w.size() + glue.u.size());
        break;  // one word per length determines the gcd contribution
      }
  return g;
}

}  // namespace symdyn
