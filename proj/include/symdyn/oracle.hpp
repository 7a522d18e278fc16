#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "symdyn/alphabet.hpp"

namespace symdyn {

struct Membership {
  enum class Kind : unsigned char { Out, In, Unknown };
  Kind kind = Kind::Out;
  // For Unknown: the search horizon that was exhausted.
  std::size_t horizon = 0;

  static Membership in() { return {Kind::In, 0}; }
  static Membership out() { return {Kind::Out, 0}; }
  static Membership unknown(std::size_t horizon) { return {Kind::Unknown, horizon}; }
  static Membership from_bool(bool b) { return b ? in() : out(); }

  bool is_in() const { return kind == Kind::In; }
  bool is_out() const { return kind == Kind::Out; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

// Strongest of two answers for an existential search: In beats Unknown beats Out.
inline Membership either(Membership a, Membership b) {
  if (a.is_in() || b.is_in()) return Membership::in();
  if (a.is_unknown()) return a;
  return b;
}

// Weakest of two answers for a conjunction: Out beats Unknown beats In.
inline Membership both(Membership a, Membership b) {
  if (a.is_out() || b.is_out()) return Membership::out();
  if (a.is_unknown()) return a;
  return b;
}

std::string to_string(Membership m);

struct PeriodicAnswer {
  Membership membership;
  // False when the answer came from checking a finite periodization only.
  bool exact = true;
};

// Language membership for one subshift. Implementations are immutable after
// construction and safe to query from several threads.
class LanguageOracle {
 public:
  virtual ~LanguageOracle() = default;

  virtual const Alphabet& alphabet() const = 0;
  virtual Membership contains(WordView w) const = 0;

  // Caller guarantees w without its last symbol is In.
  virtual Membership contains_extension(WordView w) const { return contains(w); }
  // Caller guarantees w without its first symbol is In.
  virtual Membership contains_prepension(WordView w) const { return contains(w); }

  // Never answers Unknown.
  virtual bool exact() const { return true; }

  // Equal keys imply equal follower sets {x : wx in L} (resp. predecessor
  // sets {x : xw in L}). The default key is the word itself.
  virtual std::string follower_key(WordView w) const;
  virtual std::string predecessor_key(WordView w) const;

  // Is the bi-infinite periodic point ...www... in the shift?
  virtual PeriodicAnswer periodic(WordView w) const;

  // Depth used by the default periodization check.
  std::size_t periodic_depth() const { return periodic_depth_; }
  void set_periodic_depth(std::size_t d) { periodic_depth_ = d; }

 private:
  std::size_t periodic_depth_ = 24;
};

using OraclePtr = std::shared_ptr<const LanguageOracle>;

}  // namespace symdyn
