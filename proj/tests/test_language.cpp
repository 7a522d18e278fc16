#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "brute.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/language.hpp"
#include "symdyn/util.hpp"
#include "symdyn/word.hpp"

using namespace symdyn;

namespace {

std::vector<Word> lang(const Shift& s, std::size_t n) { return enumerate_language(s, n).words; }

}  // namespace

TEST_CASE("contains: examples per family") {
  auto full = make_shift(specs::full(2));
  auto gm = make_shift(specs::golden_mean());
  auto one = make_shift(specs::at_most_one_one());
  const auto& a = gm.alphabet();
  CHECK(full.contains(parse_word(a, "0110")).is_in());
  CHECK(gm.contains(parse_word(a, "0110")).is_out());
  CHECK(gm.contains(parse_word(a, "0101")).is_in());
  CHECK(gm.contains(parse_word(a, "0111")).is_out());
  CHECK(one.contains(parse_word(a, "101")).is_out());
  CHECK(one.contains(parse_word(a, "00100")).is_in());
  CHECK(gm.contains(Word{}).is_in());
  CHECK_THROWS_AS(gm.contains(Word{0, 2}), InputError);
}

TEST_CASE("empty SFT answers Out for nonempty words") {
  // Over {0,1} forbidding 0 and 1 leaves nothing; forbidding 00, 01, 10, 11 too.
  auto s = make_shift(specs::sft(Alphabet::binary(), {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(s.contains(Word{0}).is_out());
  CHECK(s.contains(Word{1}).is_out());
  CHECK(enumerate_language(s, 3).words.empty());
}

TEST_CASE("SFT enumeration equals padded brute force on random forbidden lists") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto r = brute::random_sft(rng);
    Alphabet a = Alphabet::digits(r.k);
    auto s = make_shift(specs::sft(a, r.forbidden));
    std::size_t order = 0;
    for (const auto& f : r.forbidden) order = std::max(order, f.size() - 1);
    std::size_t pad = 1;
    for (std::size_t i = 0; i < order; ++i) pad *= r.k;
    for (std::size_t n = 1; n <= 5; ++n) {
      auto expect = brute::filter(r.k, n, [&](const Word& w) { return brute::sft_member(r.k, r.forbidden, w, pad); });
      CHECK_MESSAGE(lang(s, n) == expect, "trial " << trial << " n " << n);
    }
  }
}

TEST_CASE("golden mean: Fibonacci counts") {
  auto gm = make_shift(specs::golden_mean());
  auto counts = count_language(gm, 25);
  std::uint64_t a = 1, b = 2;  // |L_0|, |L_1|
  CHECK(counts[0].certain == 1);
  for (std::size_t n = 1; n <= 25; ++n) {
    CHECK(counts[n].certain == b);
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  CHECK(counts[10].certain == 144);
  CHECK(lang(gm, 10) == brute::filter(2, 10, brute::golden));
}

TEST_CASE("simple families against brute force") {
  auto bd = make_shift(specs::bounded_density(MistakeFunction::sqrt_ceil()));
  auto bdl = make_shift(specs::bounded_density(MistakeFunction::log2_scaled(1, 1)));
  auto one = make_shift(specs::at_most_one_one());
  auto beta = make_shift(specs::beta_golden());
  for (std::size_t n = 0; n <= 12; ++n) {
    CHECK(lang(bd, n) == brute::filter(2, n, [](const Word& w) { return brute::bounded_density(w, brute::ceil_sqrt); }));
    CHECK(lang(bdl, n) == brute::filter(2, n, [](const Word& w) {
            return brute::bounded_density(w, [](std::size_t k) {
              std::size_t l = 0;
              while ((std::size_t{2} << l) <= k) ++l;
              return 1 + l;
            });
          }));
    CHECK(lang(one, n) == brute::filter(2, n, brute::at_most_one_one));
    CHECK(lang(beta, n) == brute::filter(2, n, [](const Word& w) {
            return brute::beta_member(w, [](std::size_t i) { return i % 2 == 0 ? 1u : 0u; });
          }));
  }
  // The spec's worked examples for the two density rules.
  CHECK(bd.contains(Word{1, 0, 0, 1, 0}).is_in());
  CHECK(bd.contains(Word{1, 1}).is_in());
  CHECK(bdl.contains(Word{1, 1}).is_in());
  CHECK(bdl.contains(Word{1, 1, 1}).is_out());
  CHECK(enumerate_language(one, 5).words.size() == 6);
}

TEST_CASE("beta-shift of the golden expansion has the golden-mean language") {
  auto beta = make_shift(specs::beta_golden());
  auto gm = make_shift(specs::golden_mean());
  for (std::size_t n = 0; n <= 12; ++n) CHECK(lang(beta, n) == lang(gm, n));
}

TEST_CASE("beta-shift with a longer expansion against brute force") {
  // 2 1 0 repeating: admissible since every shift is smaller.
  auto beta = make_shift(specs::beta({}, {2, 1, 0}));
  const unsigned period[] = {2, 1, 0};
  for (std::size_t n = 1; n <= 7; ++n)
    CHECK(lang(beta, n) ==
          brute::filter(3, n, [&](const Word& w) { return brute::beta_member(w, [&](std::size_t i) { return period[i % 3]; }); }));
}

TEST_CASE("coded shifts from explicit generators") {
  std::vector<Word> gens = {{1}, {0, 0}};
  auto s = make_shift(specs::coded(Alphabet::binary(), gens));
  CHECK(s.exact());
  for (std::size_t n = 1; n <= 10; ++n) {
    auto expect = brute::coded_language(gens, n);
    CHECK(lang(s, n) == std::vector<Word>(expect.begin(), expect.end()));
  }
  std::vector<Word> gens2 = {{0, 1, 1}, {0, 1}, {2}};
  auto s2 = make_shift(specs::coded(Alphabet::digits(3), gens2));
  for (std::size_t n = 1; n <= 7; ++n) {
    auto expect = brute::coded_language(gens2, n);
    CHECK(lang(s2, n) == std::vector<Word>(expect.begin(), expect.end()));
  }
}

TEST_CASE("S-gap with even gaps equals the even shift") {
  auto sg = make_shift(specs::s_gap({}, 0, 2));
  auto even = make_shift(specs::coded(Alphabet::binary(), {{1}, {0, 0}}));
  for (std::size_t n = 0; n <= 12; ++n) CHECK(lang(sg, n) == lang(even, n));
}

TEST_CASE("S-gap with a finite gap set") {
  // S = {1, 3}: between two 1s there are 1 or 3 zeros. Boundary runs up to 3.
  auto sg = make_shift(specs::s_gap({1, 3}));
  for (std::size_t n = 1; n <= 9; ++n) {
    auto expect = brute::coded_language({{1, 0}, {1, 0, 0, 0}}, n);
    CHECK(lang(sg, n) == std::vector<Word>(expect.begin(), expect.end()));
  }
}

TEST_CASE("products multiply counts and reject by coordinate") {
  auto gm = specs::golden_mean();
  auto p = make_shift(specs::product(gm, gm));
  auto counts = count_language(p, 6);
  auto single = count_language(make_shift(gm), 6);
  for (std::size_t n = 0; n <= 6; ++n) CHECK(counts[n].certain == single[n].certain * single[n].certain);
  CHECK(counts[4].certain == 64);
  auto ff = make_shift(specs::product(specs::full(2), specs::full(2)));
  CHECK(count_language(ff, 3)[3].certain == 64);
  auto mixed = make_shift(specs::product(gm, specs::at_most_one_one()));
  // Pair symbols are (left, right) in row-major order: index 2 * l + r.
  Word w = {0 * 2 + 1, 0 * 2 + 0, 0 * 2 + 1};
  CHECK(mixed.contains(w).is_out());
  Word ok = {0 * 2 + 1, 1 * 2 + 0, 0 * 2 + 0};
  CHECK(mixed.contains(ok).is_in());
}

TEST_CASE("factor language is the image of the base language") {
  auto gm = specs::golden_mean();
  auto id = make_shift(specs::sum_factor(gm, 0));
  auto base = make_shift(gm);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(count_language(id, n)[n].certain == count_language(base, n)[n].certain);

  // Radius 1: sum of the three window symbols, at most 2 for the golden mean.
  auto f = make_shift(specs::sum_factor(gm, 1));
  for (std::size_t n = 1; n <= 8; ++n) {
    std::set<std::vector<long>> image;
    for (const auto& w : lang(base, n + 2)) {
      std::vector<long> img;
      for (std::size_t i = 0; i < n; ++i) img.push_back(w[i] + w[i + 1] + w[i + 2]);
      image.insert(img);
    }
    auto got = lang(f, n);
    CHECK(got.size() == image.size());
    CHECK(got.size() <= lang(base, n + 2).size());
    std::set<std::vector<long>> labels;
    for (const auto& w : got) {
      std::vector<long> l;
      for (Symbol s : w) l.push_back(f.alphabet().label(s));
      labels.insert(l);
    }
    CHECK(labels == image);
  }
}

TEST_CASE("every family is factorial") {
  std::vector<ShiftSpecPtr> all = {specs::full(3),
                                   specs::golden_mean(),
                                   specs::beta_golden(),
                                   specs::s_gap({1, 2, 5}),
                                   specs::bounded_density(MistakeFunction::sqrt_ceil()),
                                   specs::at_most_one_one(),
                                   specs::coded(Alphabet::binary(), {{1}, {0, 0}}),
                                   specs::product(specs::golden_mean(), specs::at_most_one_one()),
                                   specs::sum_factor(specs::product(specs::beta_golden(), specs::beta_golden()))};
  for (const auto& spec : all) {
    auto s = make_shift(spec);
    auto d = WordCollection::from_shift(s, 7);
    CHECK_MESSAGE(!d.factoriality_violation(), s.name());
    for (std::size_t n = 1; n <= 7; ++n)
      for (const auto& w : d.at(n)) {
        CHECK(d.contains(Word(w.begin() + 1, w.end())));
        CHECK(d.contains(Word(w.begin(), w.end() - 1)));
      }
  }
}

TEST_CASE("submultiplicativity and the all-zero word") {
  auto bd = make_shift(specs::bounded_density(MistakeFunction::sqrt_ceil()));
  auto c = count_language(bd, 16);
  for (std::size_t m = 1; m <= 8; ++m)
    for (std::size_t n = 1; m + n <= 16; ++n) CHECK(c[m + n].certain <= c[m].certain * c[n].certain);
  for (std::size_t n = 1; n <= 30; ++n) CHECK(bd.contains(Word(n, 0)).is_in());
}

TEST_CASE("enumeration is identical across thread counts") {
  auto s = make_shift(specs::product(specs::golden_mean(), specs::beta({}, {2, 1, 0})));
  set_thread_count(1);
  auto one = enumerate_language_upto(s, 7);
  set_thread_count(4);
  auto four = enumerate_language_upto(s, 7);
  set_thread_count(0);
  for (std::size_t n = 0; n <= 7; ++n) CHECK(one[n].words == four[n].words);
}

TEST_CASE("count cache: disk round trip and corrupt entries") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "symdyn_cache_test";
  fs::remove_all(dir);
  auto& cache = CountCache::instance();
  std::string saved = cache.directory();
  cache.set_directory(dir.string());
  cache.clear_memory();
  auto gm = make_shift(specs::golden_mean());
  auto first = count_language(gm, 12);
  cache.clear_memory();
  auto path = cache.file_path(gm.fingerprint(), 12);
  REQUIRE(fs::exists(path));
  auto second = count_language(gm, 12);
  CHECK(second[12].certain == first[12].certain);
  {
    std::ofstream f(path);
    f << "symdyn-count 1\nfingerprint " << gm.fingerprint() << "\nn 12\ncertain 999\npossible 999\nsha256 00\n";
  }
  cache.clear_memory();
  auto third = count_language(gm, 12);
  CHECK(third[12].certain == 377);
  auto text = CountCache::encode(gm.fingerprint(), third[12]);
  auto back = CountCache::decode(text, gm.fingerprint(), 12);
  REQUIRE(back);
  CHECK(back->certain == 377);
  CHECK(!CountCache::decode(text, gm.fingerprint(), 11));
  cache.set_directory(saved);
  cache.clear_memory();
  fs::remove_all(dir);
}

TEST_CASE("extendable cores") {
  auto full = WordCollection::from_predicate(Alphabet::binary(), 15, true, [](WordView) { return true; });
  CHECK(extendable_core(full, 3, 2).size() == 8);

  auto one = WordCollection::from_predicate(Alphabet::binary(), 9, true,
                                            [](WordView w) { return std::count(w.begin(), w.end(), 1) <= 1; });
  CHECK(extendable_core(one, 3, 1).size() == 4);

  auto gm = WordCollection::from_predicate(Alphabet::binary(), 20, true, [](WordView w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == 1 && w[i + 1] == 1) return false;
    return true;
  });
  CHECK(extendable_core(gm, 4, 2).size() == 8);
  CHECK_THROWS_AS(extendable_core(gm, 4, 3), InsufficientDepth);

  // A collection that is not biextendable: words ending in 1 cannot be
  // followed by anything, so cores shrink.
  auto dead = WordCollection::from_predicate(Alphabet::binary(), 12, true, [](WordView w) {
    auto it = std::find(w.begin(), w.end(), 1);
    return it == w.end() || it + 1 == w.end();
  });
  auto seq = core_sequence(dead, 2, 5);
  for (std::size_t k = 1; k < seq.sizes.size(); ++k) CHECK(seq.sizes[k] <= seq.sizes[k - 1]);
  REQUIRE(seq.stabilized_at);
  CHECK(seq.core == std::vector<Word>{{0, 0}});

  // Brute force for the oracle form.
  auto gms = make_shift(specs::golden_mean());
  auto core = extendable_core(gms.oracle(), 3, 2);
  CHECK(core == brute::filter(2, 3, brute::golden));
}
