#pragma once

#include "ordflow/logic/eval.hpp"
#include "ordflow/natural.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ordflow {

// Finite test domain standing in for "provable": each free parameter ranges
// over [0, max] unless overridden by name, unbounded quantifiers are cut at
// domain_bound, and ordinal stages are enumerated through codes <= code_bound.
struct Grid {
  Natural max = 16;
  std::map<std::string, Natural> ranges;
  std::map<std::string, std::vector<Natural>> values;  // explicit value lists win over ranges
  Natural domain_bound = 16;
  Natural code_bound = 200;

  Natural range_of(const logic::Var& v) const;
  // Lets `v` range over the valid ordinal codes <= code_bound.
  void use_codes(const logic::Var& v);

  static Grid uniform(const Natural& max) {
    Grid g;
    g.max = max;
    return g;
  }
};

// Parameters in canonical order (by name).
std::vector<logic::Var> canonical_order(const logic::VarSet& vars);

// Visits every assignment of `vars` on top of `base` in canonical order (the
// last variable varies fastest). Stops early when `visit` returns false and
// then returns false itself.
bool for_each_point(const Grid& grid, const std::vector<logic::Var>& vars, const logic::Env& base,
                    const std::function<bool(const logic::Env&)>& visit);

// Valid ordinal codes <= bound in increasing numeric order.
const std::vector<Natural>& valid_codes_upto(const Natural& bound);

// Valid codes <= code_bound whose ordinal is at most beta, plus beta itself,
// in increasing ordinal order. `truncated` is set when some ordinal up to beta
// has no code within the bound.
struct StageList {
  std::vector<std::pair<Ordinal, Natural>> stages;
  bool truncated = false;
};
StageList stages_upto(const Ordinal& beta, const Natural& code_bound);

std::vector<std::pair<std::string, Natural>> snapshot(const logic::Env& env, const std::vector<logic::Var>& vars);

}  // namespace ordflow
