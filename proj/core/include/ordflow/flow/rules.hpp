#pragma once

// Sequent rules for conjunction and disjunction, shared by ordinal flows and
// k-flows. A flow "Gamma |> Delta" runs from big_and(Gamma) to big_or(Delta).

#include "ordflow/flow/kflow.hpp"
#include "ordflow/flow/ordinal_flow.hpp"

namespace ordflow::flow {

enum class Side { left, right };

template <class F>
struct FlowOps;

template <>
struct FlowOps<OrdinalFlow> {
  static OrdinalFlow imp(const Formula& a, const Formula& b, const OrdinalFlow&) {
    return flow_from_implication(a, b);
  }
  static OrdinalFlow and_ctx(const OrdinalFlow& f, const Formula& c) { return flow_and_context(f, c); }
  static OrdinalFlow or_ctx(const OrdinalFlow& f, const Formula& c) { return flow_or_context(f, c); }
  static OrdinalFlow glue(const OrdinalFlow& a, const OrdinalFlow& b, const Grid& g) {
    return glue_seq_ordinal(a, b, g);
  }
};

template <>
struct FlowOps<KFlow> {
  static KFlow imp(const Formula& a, const Formula& b, const KFlow& like) {
    return kflow_from_implication(a, b, like.k);
  }
  static KFlow and_ctx(const KFlow& f, const Formula& c) { return kflow_and_context(f, c); }
  static KFlow or_ctx(const KFlow& f, const Formula& c) { return kflow_or_context(f, c); }
  static KFlow glue(const KFlow& a, const KFlow& b, const Grid& g) { return glue_seq_k(a, b, g); }
};

// Gamma, A |> Delta (or Gamma, B |> Delta) gives Gamma, A and B |> Delta.
template <class F>
F conj_left(const F& f, const std::vector<Formula>& gamma, const std::vector<Formula>& delta, const Formula& a,
            const Formula& b, Side kept, const Grid& grid) {
  using Ops = FlowOps<F>;
  const Formula& part = kept == Side::left ? a : b;
  F given = with_endpoints(f, left_side(gamma, part), big_or(delta), grid);
  F pre = Ops::imp(left_side(gamma, a && b), given.source, f);
  return Ops::glue(pre, given, grid);
}

// Gamma |> Delta, A and Gamma |> Delta, B give Gamma |> Delta, A and B.
template <class F>
F conj_right(const F& f1, const F& f2, const std::vector<Formula>& gamma, const std::vector<Formula>& delta,
             const Formula& a, const Formula& b, const Grid& grid) {
  using Ops = FlowOps<F>;
  const Formula g = big_and(gamma);
  F first = with_endpoints(f1, g, right_side(delta, a), grid);
  F second = with_endpoints(f2, g, right_side(delta, b), grid);
  F pre = Ops::imp(g, g && g, f1);
  F run_a = Ops::and_ctx(first, g);  // Gamma and Gamma |> (Delta, A) and Gamma
  F run_b = Ops::and_ctx(second, first.target);
  F post = Ops::imp(run_b.target, right_side(delta, a && b), f1);
  return Ops::glue(Ops::glue(Ops::glue(pre, run_a, grid), run_b, grid), post, grid);
}

// Gamma |> Delta, A (or Delta, B) gives Gamma |> Delta, A or B.
template <class F>
F disj_right(const F& f, const std::vector<Formula>& gamma, const std::vector<Formula>& delta, const Formula& a,
             const Formula& b, Side kept, const Grid& grid) {
  using Ops = FlowOps<F>;
  const Formula& part = kept == Side::left ? a : b;
  F given = with_endpoints(f, big_and(gamma), right_side(delta, part), grid);
  F post = Ops::imp(given.target, right_side(delta, a || b), f);
  return Ops::glue(given, post, grid);
}

// Gamma, A |> Delta and Gamma, B |> Delta give Gamma, A or B |> Delta.
template <class F>
F disj_left(const F& f1, const F& f2, const std::vector<Formula>& gamma, const std::vector<Formula>& delta,
            const Formula& a, const Formula& b, const Grid& grid) {
  using Ops = FlowOps<F>;
  const Formula d = big_or(delta);
  const Formula ga = left_side(gamma, a), gb = left_side(gamma, b);
  F first = with_endpoints(f1, ga, d, grid);
  F second = with_endpoints(f2, gb, d, grid);
  F pre = Ops::imp(left_side(gamma, a || b), ga || gb, f1);
  F run_a = Ops::or_ctx(first, gb);  // (Gamma, A) or (Gamma, B) |> Delta or (Gamma, B)
  F run_b = Ops::or_ctx(second, d);  // ... |> Delta or Delta
  F post = Ops::imp(d || d, d, f1);
  return Ops::glue(Ops::glue(Ops::glue(pre, run_a, grid), run_b, grid), post, grid);
}

}  // namespace ordflow::flow
