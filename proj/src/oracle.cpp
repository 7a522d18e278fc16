#include "symdyn/oracle.hpp"

#include "symdyn/word.hpp"

namespace symdyn {

std::string to_string(Membership m) {
  switch (m.kind) {
    case Membership::Kind::In: return "In";
    case Membership::Kind::Out: return "Out";
    case Membership::Kind::Unknown: return "Unknown(" + std::to_string(m.horizon) + ")";
  }
  return "?";
}

std::string LanguageOracle::follower_key(WordView w) const { return "w" + word_key(w); }
std::string LanguageOracle::predecessor_key(WordView w) const { return "w" + word_key(w); }

PeriodicAnswer LanguageOracle::periodic(WordView w) const {
  if (w.empty()) return {Membership::out(), true};
  std::size_t reps = (periodic_depth_ + w.size() - 1) / w.size() + 1;
  return {contains(repeat(w, reps)), false};
}

}  // namespace symdyn
