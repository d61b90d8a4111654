#pragma once

#include "ordflow/grid.hpp"
#include "ordflow/logic/formula.hpp"
#include "ordflow/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ordflow::flow {

using logic::Env;
using logic::Formula;
using logic::Term;
using logic::Var;
using logic::VarSet;

// `preferred` unless it clashes with `avoid`, then a primed variant.
Var pick_stage_var(Var preferred, const VarSet& avoid);

VarSet free_vars_of(const std::vector<Formula>& fs, const std::vector<Term>& ts = {});

// First grid point (over the free variables of a and b, on top of `base`)
// where the two formulas disagree. Clears `exact` when an evaluation was
// inexact.
std::optional<Counterexample> find_disagreement(const Formula& a, const Formula& b, const Grid& grid,
                                                const std::string& condition, bool& exact, const Env& base = {});

// Throws EndpointMismatch unless a and b agree on the grid.
void require_equivalent(const Formula& a, const Formula& b, const Grid& grid, const std::string& what);

// a <= b for ordinal codes: olt(a, b) = 1 or a = b.
Formula ord_le(const Term& a, const Term& b);
Formula ord_lt(const Term& a, const Term& b);

Formula big_and(const std::vector<Formula>& fs);
Formula big_or(const std::vector<Formula>& fs);

// Sequent sides: "gamma, A" is big_and(gamma..., A), "A, delta" is big_or(delta..., A).
Formula left_side(std::vector<Formula> gamma, const Formula& a);
Formula right_side(std::vector<Formula> delta, const Formula& a);

}  // namespace ordflow::flow
