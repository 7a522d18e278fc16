#include "symdyn/language.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "symdyn/errors.hpp"
#include "symdyn/util.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

namespace {

struct SubtreeResult {
  std::vector<std::vector<Word>> in, unknown;
};

void collect(const LanguageOracle& oracle, Word& prefix, std::size_t n_max, SubtreeResult& out) {
  std::size_t a = oracle.alphabet().size();
  for (Symbol s = 0; s < a; ++s) {
    prefix.push_back(s);
    Membership m = oracle.contains_extension(prefix);
    if (!m.is_out()) {
      (m.is_in() ? out.in : out.unknown)[prefix.size()].push_back(prefix);
      if (prefix.size() < n_max) collect(oracle, prefix, n_max, out);
    }
    prefix.pop_back();
  }
}

struct SubtreeCounts {
  std::vector<std::uint64_t> in, unknown;
};

void tally(const LanguageOracle& oracle, Word& prefix, std::size_t n_max, SubtreeCounts& out) {
  std::size_t a = oracle.alphabet().size();
  for (Symbol s = 0; s < a; ++s) {
    prefix.push_back(s);
    Membership m = oracle.contains_extension(prefix);
    if (!m.is_out()) {
      ++(m.is_in() ? out.in : out.unknown)[prefix.size()];
      if (prefix.size() < n_max) tally(oracle, prefix, n_max, out);
    }
    prefix.pop_back();
  }
}

std::vector<LanguageSlice> enumerate_oracle(const LanguageOracle& oracle, std::size_t n_max) {
  std::vector<LanguageSlice> slices(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) slices[n].length = n;
  Membership empty = oracle.contains(Word{});
  if (empty.is_out()) return slices;
  (empty.is_in() ? slices[0].words : slices[0].unknown).push_back(Word{});
  if (n_max == 0) return slices;

  std::size_t a = oracle.alphabet().size();
  std::vector<SubtreeResult> parts(a);
  parallel_for(a, [&](std::size_t s) {
    SubtreeResult& r = parts[s];
    r.in.resize(n_max + 1);
    r.unknown.resize(n_max + 1);
    Word prefix{static_cast<Symbol>(s)};
    Membership m = oracle.contains_extension(prefix);
    if (m.is_out()) return;
    (m.is_in() ? r.in : r.unknown)[1].push_back(prefix);
    if (n_max > 1) collect(oracle, prefix, n_max, r);
  });
  for (std::size_t n = 1; n <= n_max; ++n)
    for (auto& r : parts) {
      slices[n].words.insert(slices[n].words.end(), r.in[n].begin(), r.in[n].end());
      slices[n].unknown.insert(slices[n].unknown.end(), r.unknown[n].begin(), r.unknown[n].end());
    }
  return slices;
}

std::vector<CountRecord> count_oracle(const LanguageOracle& oracle, std::size_t n_max) {
  std::vector<CountRecord> out(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out[n].n = n;
  Membership empty = oracle.contains(Word{});
  if (empty.is_out()) return out;
  out[0].certain = empty.is_in();
  out[0].possible = 1;
  if (n_max == 0) return out;
  std::size_t a = oracle.alphabet().size();
  std::vector<SubtreeCounts> parts(a);
  parallel_for(a, [&](std::size_t s) {
    SubtreeCounts& r = parts[s];
    r.in.assign(n_max + 1, 0);
    r.unknown.assign(n_max + 1, 0);
    Word prefix{static_cast<Symbol>(s)};
    Membership m = oracle.contains_extension(prefix);
    if (m.is_out()) return;
    ++(m.is_in() ? r.in : r.unknown)[1];
    if (n_max > 1) tally(oracle, prefix, n_max, r);
  });
  for (std::size_t n = 1; n <= n_max; ++n)
    for (const auto& r : parts) {
      out[n].certain += r.in[n];
      out[n].possible += r.in[n] + r.unknown[n];
    }
  return out;
}

}  // namespace

std::vector<LanguageSlice> enumerate_language_upto(const Shift& shift, std::size_t n_max) {
  auto slices = enumerate_oracle(shift.oracle(), n_max);
  auto& cache = CountCache::instance();
  for (const auto& s : slices) cache.store(shift.fingerprint(), {s.length, s.certain(), s.possible()});
  return slices;
}

LanguageSlice enumerate_language(const Shift& shift, std::size_t n) {
  return std::move(enumerate_language_upto(shift, n)[n]);
}

std::vector<CountRecord> count_language(const Shift& shift, std::size_t n_max) {
  auto& cache = CountCache::instance();
  std::vector<CountRecord> out;
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto hit = cache.lookup(shift.fingerprint(), n);
    if (!hit) break;
    out.push_back(*hit);
  }
  if (out.size() == n_max + 1) return out;
  out = count_oracle(shift.oracle(), n_max);
  for (const auto& r : out) cache.store(shift.fingerprint(), r);
  return out;
}

// ---------------------------------------------------------------- cache

struct CountCache::Impl {
  std::mutex mutex;
  std::unordered_map<std::string, CountRecord> memory;
};

CountCache::CountCache() : impl_(std::make_shared<Impl>()) {
  if (const char* env = std::getenv("SYMDYN_CACHE_DIR")) dir_ = env;
}

CountCache& CountCache::instance() {
  static CountCache cache;
  return cache;
}

void CountCache::set_directory(std::string path) { dir_ = std::move(path); }

void CountCache::clear_memory() {
  std::lock_guard lock(impl_->mutex);
  impl_->memory.clear();
}

std::string CountCache::file_path(const std::string& fingerprint, std::size_t n) const {
  return (std::filesystem::path(dir_) / (fingerprint + "-" + std::to_string(n) + ".count")).string();
}

std::string CountCache::encode(const std::string& fingerprint, const CountRecord& r) {
  std::ostringstream body;
  body << "symdyn-count 1\n"
       << "fingerprint " << fingerprint << "\n"
       << "n " << r.n << "\n"
       << "certain " << r.certain << "\n"
       << "possible " << r.possible << "\n";
  std::string text = body.str();
  return text + "sha256 " + sha256_hex(text) + "\n";
}

std::optional<CountRecord> CountCache::decode(const std::string& text, const std::string& fingerprint,
                                              std::size_t n) {
  auto pos = text.rfind("sha256 ");
  if (pos == std::string::npos) return std::nullopt;
  std::string body = text.substr(0, pos);
  std::string digest = text.substr(pos + 7);
  while (!digest.empty() && (digest.back() == '\n' || digest.back() == '\r')) digest.pop_back();
  if (digest != sha256_hex(body)) return std::nullopt;
  std::istringstream in(body);
  std::string tag, fp;
  int version = 0;
  CountRecord r;
  if (!(in >> tag >> version) || tag != "symdyn-count" || version != 1) return std::nullopt;
  if (!(in >> tag >> fp) || tag != "fingerprint" || fp != fingerprint) return std::nullopt;
  if (!(in >> tag >> r.n) || tag != "n" || r.n != n) return std::nullopt;
  if (!(in >> tag >> r.certain) || tag != "certain") return std::nullopt;
  if (!(in >> tag >> r.possible) || tag != "possible" || r.possible < r.certain) return std::nullopt;
  return r;
}

std::optional<CountRecord> CountCache::lookup(const std::string& fingerprint, std::size_t n) {
  std::string key = fingerprint + ":" + std::to_string(n);
  {
    std::lock_guard lock(impl_->mutex);
    auto it = impl_->memory.find(key);
    if (it != impl_->memory.end()) return it->second;
  }
  if (dir_.empty()) return std::nullopt;
  std::ifstream in(file_path(fingerprint, n));
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  auto r = decode(ss.str(), fingerprint, n);
  if (r) {
    std::lock_guard lock(impl_->mutex);
    impl_->memory[key] = *r;
  }
  return r;
}

void CountCache::store(const std::string& fingerprint, const CountRecord& record) {
  {
    std::lock_guard lock(impl_->mutex);
    impl_->memory[fingerprint + ":" + std::to_string(record.n)] = record;
  }
  if (dir_.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  std::string path = file_path(fingerprint, record.n);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << encode(fingerprint, record);
  }
  std::filesystem::rename(tmp, path, ec);
}

// ---------------------------------------------------------------- collections

WordCollection::WordCollection(Alphabet alphabet, std::size_t depth, bool factorial)
    : alphabet_(std::move(alphabet)), depth_(depth), factorial_(factorial), by_length_(depth + 1) {}

WordCollection WordCollection::from_shift(const Shift& shift, std::size_t depth) {
  WordCollection d(shift.alphabet(), depth, true);
  for (auto& slice : enumerate_language_upto(shift, depth))
    for (auto& w : slice.words) d.add(std::move(w));
  return d;
}

WordCollection WordCollection::from_predicate(Alphabet alphabet, std::size_t depth, bool factorial,
                                              const std::function<bool(WordView)>& pred) {
  WordCollection d(alphabet, depth, factorial);
  for (std::size_t n = 0; n <= depth; ++n)
    for (auto& w : all_words(alphabet.size(), n))
      if (pred(w)) d.add(std::move(w));
  return d;
}

void WordCollection::add(Word w) {
  for (Symbol s : w)
    if (s >= alphabet_.size()) throw InputError("word uses a symbol outside the alphabet");
  if (w.size() > depth_) throw InsufficientDepth(w.size(), depth_);
  by_length_[w.size()].insert(std::move(w));
}

const std::set<Word>& WordCollection::at(std::size_t n) const {
  if (n > depth_) throw InsufficientDepth(n, depth_);
  return by_length_[n];
}

bool WordCollection::contains(WordView w) const {
  if (w.size() > depth_) throw InsufficientDepth(w.size(), depth_);
  return by_length_[w.size()].count(Word(w.begin(), w.end())) > 0;
}

std::optional<Word> WordCollection::factoriality_violation() const {
  for (std::size_t n = 1; n <= depth_; ++n)
    for (const auto& w : by_length_[n]) {
      // Checking the two maximal proper subwords suffices by induction on length.
      if (!by_length_[n - 1].count(Word(w.begin() + 1, w.end())) ||
          !by_length_[n - 1].count(Word(w.begin(), w.end() - 1)))
        return w;
    }
  return std::nullopt;
}

Membership CollectionOracle::contains(WordView w) const {
  if (w.size() > d_->depth()) return Membership::unknown(d_->depth());
  return Membership::from_bool(d_->contains(w));
}

// ---------------------------------------------------------------- extendable cores

std::vector<Word> extendable_core(const WordCollection& d, std::size_t n, std::size_t k) {
  std::size_t m = k * n;
  std::size_t total = n + 2 * m;
  if (total > d.depth()) throw InsufficientDepth(total, d.depth());
  std::set<Word> core;
  for (const auto& big : d.at(total)) {
    Word u(big.begin(), big.begin() + static_cast<std::ptrdiff_t>(m));
    Word w(big.begin() + static_cast<std::ptrdiff_t>(m), big.begin() + static_cast<std::ptrdiff_t>(m + n));
    Word v(big.begin() + static_cast<std::ptrdiff_t>(m + n), big.end());
    if (!d.at(n).count(w)) continue;
    if (!d.factorial() && (!d.at(m).count(u) || !d.at(m).count(v))) continue;
    core.insert(std::move(w));
  }
  return {core.begin(), core.end()};
}

namespace {

bool extend_left(const LanguageOracle& d, Word& word, std::size_t need, std::size_t& budget) {
  if (need == 0) return true;
  for (Symbol a = 0; a < d.alphabet().size(); ++a) {
    if (budget-- == 0) throw BudgetExceeded("extendable core search exceeded its node budget");
    word.insert(word.begin(), a);
    if (d.contains_prepension(word).is_in() && extend_left(d, word, need - 1, budget)) return true;
    word.erase(word.begin());
  }
  return false;
}

bool extend_right_then_left(const LanguageOracle& d, Word& word, std::size_t right, std::size_t left,
                            std::size_t& budget) {
  if (right == 0) {
    Word copy = word;
    return extend_left(d, copy, left, budget);
  }
  for (Symbol a = 0; a < d.alphabet().size(); ++a) {
    if (budget-- == 0) throw BudgetExceeded("extendable core search exceeded its node budget");
    word.push_back(a);
    if (d.contains_extension(word).is_in() && extend_right_then_left(d, word, right - 1, left, budget)) {
      word.pop_back();
      return true;
    }
    word.pop_back();
  }
  return false;
}

}  // namespace

std::vector<Word> extendable_core(const LanguageOracle& d, std::size_t n, std::size_t k, std::size_t node_budget) {
  auto slices = enumerate_oracle(d, n);
  std::vector<Word> core;
  std::size_t budget = node_budget;
  for (const auto& w : slices[n].words) {
    Word work = w;
    if (extend_right_then_left(d, work, k * n, k * n, budget)) core.push_back(w);
  }
  return core;
}

namespace {

template <typename D>
CoreSequence iterate_cores(const D& d, std::size_t n, std::size_t k_max, std::size_t base_size) {
  CoreSequence seq;
  seq.n = n;
  seq.sizes.push_back(base_size);
  std::vector<Word> previous;
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<Word> core;
    try {
      core = extendable_core(d, n, k);
    } catch (const InsufficientDepth&) {
      break;
    }
    seq.sizes.push_back(core.size());
    if (k > 1 && core == previous) {
      seq.stabilized_at = k - 1;
      seq.core = std::move(core);
      return seq;
    }
    previous = core;
    seq.core = std::move(core);
  }
  return seq;
}

}  // namespace

CoreSequence core_sequence(const WordCollection& d, std::size_t n, std::size_t k_max) {
  return iterate_cores(d, n, k_max, d.at(n).size());
}

CoreSequence core_sequence(const LanguageOracle& d, std::size_t n, std::size_t k_max) {
  return iterate_cores(d, n, k_max, enumerate_oracle(d, n)[n].words.size());
}

}  // namespace symdyn
