#pragma once

#include "ordflow/flow/common.hpp"
#include "ordflow/ordinal.hpp"

namespace ordflow::flow {

// Step formula H over an ordinal-code stage variable plus parameters, with
// length beta >= 1. H at stage 0 matches `source` and H at beta matches
// `target`; each stage follows from all earlier ones.
struct OrdinalFlow {
  Var var;
  Formula H;
  Ordinal beta;
  Formula source;
  Formula target;

  Formula at(const Ordinal& stage) const;
  Formula at(const Term& stage_code) const;
  // Free variables other than the stage variable.
  VarSet params() const;
};

inline const Var& default_ordinal_stage_var() {
  static const Var v("gamma");
  return v;
}

// forall g. (g is not a valid code or not g < bound or body): "every ordinal
// below bound satisfies body".
Formula forall_below(Var g, const Term& bound, const Formula& body);

// Length-1 flow (g = 0 -> A) and (g = 1 -> B). Requires A, B universal.
OrdinalFlow flow_from_implication(const Formula& a, const Formula& b);
OrdinalFlow flow_and_context(const OrdinalFlow& f, const Formula& c);
OrdinalFlow flow_or_context(const OrdinalFlow& f, const Formula& c);

// Sequential gluing; the seam f1.target = f2.source is checked on the grid.
OrdinalFlow glue_seq_ordinal(const OrdinalFlow& f1, const OrdinalFlow& f2, const Grid& grid);

// Replaces the declared endpoints by grid-equivalent ones.
OrdinalFlow with_endpoints(const OrdinalFlow& f, const Formula& source, const Formula& target, const Grid& grid);

// Substitutes a parameter throughout.
OrdinalFlow instantiate(const OrdinalFlow& f, Var param, const Term& value);

// Iterates a flow from B(d) to B(d + 1) (d an ordinal-code parameter) theta + 1
// times: the result runs from B(0) to B(theta + 1) with length beta * (theta + 1).
// B must be a conjunction of d-free formulas and one forall_below(g, d, A).
// The grid is used to check the step flow's endpoints with d over valid codes.
OrdinalFlow transfinite_iterate(const OrdinalFlow& step, const Formula& b, Var d, const Ordinal& theta,
                                const Grid& grid);

// The full induction rule: from the same data, a flow from the d-free part of
// B to A(theta).
OrdinalFlow transfinite_induction(const OrdinalFlow& step, const Formula& b, Var d, const Ordinal& theta,
                                  const Grid& grid);

// Enumerates stages over the valid codes <= grid.code_bound whose ordinal is
// at most beta, plus beta itself. The verdict is inexact when some stage up to
// beta was skipped or an unbounded quantifier was cut.
FlowVerdict check_ordinal_flow(const OrdinalFlow& f, const Grid& grid);

}  // namespace ordflow::flow
