#pragma once

#include "ordflow/logic/formula.hpp"
#include "ordflow/ordinal.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace ordflow::logic {

// Variable assignment. Later bindings shadow earlier ones, which is how
// quantifiers bind their variable during evaluation.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<Var, Natural>> bindings);

  void push(Var v, Natural value) { slots_.emplace_back(v, std::move(value)); }
  void pop() { slots_.pop_back(); }
  void set(Var v, Natural value);  // overwrite the innermost binding or push
  const Natural* find(Var v) const;
  const Natural& at(Var v) const;  // throws UnboundVariable
  const std::vector<std::pair<Var, Natural>>& bindings() const { return slots_; }

 private:
  std::vector<std::pair<Var, Natural>> slots_;
};

struct Verdict {
  bool value = false;
  // False only when the value depends on a truncated unbounded quantifier: a
  // counterexample (or witness) found inside the domain is still exact.
  bool exact = true;
};

Natural eval_term(const Term& t, const Env& env);
Verdict eval(const Formula& f, const Env& env, const Natural& domain_bound);

// Calls a defined function on already evaluated arguments.
Natural apply_function(const DefinedFunction& f, const std::vector<Natural>& args);

// Ordinal code helpers shared by evaluation and the flow checkers.
Ordinal decode_or_zero(const Natural& code);

}  // namespace ordflow::logic
