#include "ordflow/verdict.hpp"

namespace ordflow {

std::string Counterexample::describe() const {
  std::string s = condition;
  if (ordinal) s += " at stage " + print(*ordinal);
  if (step) s += " at step " + step->str();
  if (!env.empty()) {
    s += " with ";
    bool first = true;
    for (const auto& [name, value] : env) {
      if (!first) s += ", ";
      first = false;
      s += name + "=" + value.str();
    }
  }
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

}  // namespace ordflow
