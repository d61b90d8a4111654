#pragma once

#include "ordflow/logic/formula.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ordflow::logic {

struct ClassTag {
  enum class Kind { qf, forall1, exists1, sigma_hat, pi_hat };
  Kind kind;
  unsigned k = 0;

  static ClassTag QF() { return {Kind::qf}; }
  static ClassTag Forall1() { return {Kind::forall1}; }
  static ClassTag Exists1() { return {Kind::exists1}; }
  static ClassTag SigmaHat(unsigned k) { return {Kind::sigma_hat, k}; }
  static ClassTag PiHat(unsigned k) { return {Kind::pi_hat, k}; }

  friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

std::string to_string(const ClassTag& tag);

// Class membership of a formula. sigma / pi hold the least level of the
// strict bounded hierarchy containing the formula; both are empty when an
// unbounded quantifier occurs.
struct ClassInfo {
  bool qf = true;
  bool forall1 = true;
  bool exists1 = true;
  std::optional<unsigned> sigma = 0;
  std::optional<unsigned> pi = 0;

  bool contains(const ClassTag& tag) const;
  // The flags that hold plus SigmaHat(sigma) and PiHat(pi) at the least levels.
  std::vector<ClassTag> tags() const;
};

ClassInfo classify(const Formula& f);

inline bool in_class(const Formula& f, const ClassTag& tag) { return classify(f).contains(tag); }

}  // namespace ordflow::logic
