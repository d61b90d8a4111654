#pragma once

#include "ordflow/flow/common.hpp"

#include <utility>

namespace ordflow::flow {

// Step formula H(u, params) in the bounded class at level k with a term
// length t(params): H(0) matches `source`, H(t) matches `target`, and
// H(u) -> H(u + 1) for u < t.
struct KFlow {
  Var var;
  Formula H;
  Term length;
  unsigned k = 0;
  Formula source;
  Formula target;
  bool polynomial = false;  // length is a polynomial in the bit-lengths of the parameters

  Formula at(const Term& stage) const;
  VarSet params() const;
};

inline const Var& default_k_stage_var() {
  static const Var v("u");
  return v;
}

// Assembles a flow, computing the polynomial flag from the length.
KFlow make_kflow(Var var, Formula h, Term length, unsigned k, Formula source, Formula target);

// Length-1 flow (u = 0 -> A) and (u = 1 -> B). Requires A, B at level k.
KFlow kflow_from_implication(const Formula& a, const Formula& b, unsigned k);
KFlow kflow_and_context(const KFlow& f, const Formula& c);
KFlow kflow_or_context(const KFlow& f, const Formula& c);

// Sequential gluing with length t + t' + 1; the seam is checked on the grid.
KFlow glue_seq_k(const KFlow& f1, const KFlow& f2, const Grid& grid);

KFlow with_endpoints(const KFlow& f, const Formula& source, const Formula& target, const Grid& grid);
KFlow instantiate(const KFlow& f, Var param, const Term& value);

// Extends the length to s, holding the target after the old length. Throws
// BoundViolation when t <= s fails somewhere on the grid.
KFlow pad(const KFlow& f, const Term& s, const Grid& grid);

// Removes the dependence of the length on the parameter y for y <= s: the
// returned I(u, y, params) and r(params) satisfy I(0) = source,
// I(r) = target for y <= s, I(u) -> I(u + 1) for every u, and r >= 1.
// The four properties are checked on the grid (PreconditionFailed otherwise).
struct BoundedFlow {
  Var var;
  Formula I;
  Term r;
};
BoundedFlow bound_params(const KFlow& f, Var y, const Term& s, const Grid& grid);

// From a polynomial flow Gamma, D(y / 2) to D(y) (or to Gamma and D(y)), a
// polynomial flow from Gamma and D(0) to D(s). `core` receives the
// halving-chain flow from Gamma and D(0) to Gamma and D(s) before the final
// weakening.
KFlow strong_glue_pind(const std::vector<Formula>& gamma, const Formula& d, Var y, const KFlow& step, const Term& s,
                       const Grid& grid, KFlow* core = nullptr);

// From a flow Gamma, D(y) to D(y + 1) (or to Gamma and D(y + 1)), a flow from
// Gamma and D(0) to D(s). Not polynomial in general.
KFlow strong_glue_ind(const std::vector<Formula>& gamma, const Formula& d, Var y, const KFlow& step, const Term& s,
                      const Grid& grid, KFlow* core = nullptr);

// From Gamma, A |> Delta build Gamma |> Delta, not A.
KFlow neg_rule_left(const KFlow& f, const std::vector<Formula>& gamma, const std::vector<Formula>& delta,
                    const Formula& a, const Grid& grid);
// From Gamma |> Delta, A build Gamma, not A |> Delta.
KFlow neg_rule_right(const KFlow& f, const std::vector<Formula>& gamma, const std::vector<Formula>& delta,
                     const Formula& a, const Grid& grid);

// From A, y <= s |> B(y) build A |> forall y <= s. B(y).
KFlow bounded_forall_intro(const KFlow& f, const Formula& a, const Formula& b, Var y, const Term& s,
                           const Grid& grid);

// Exhaustive check: every stage u < t(params) at every grid point.
FlowVerdict check_kflow(const KFlow& f, const Grid& grid);

}  // namespace ordflow::flow
