#include "ordflow/flow/common.hpp"

#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"

namespace ordflow::flow {

using namespace logic;

Var pick_stage_var(Var preferred, const VarSet& avoid) {
  return var_contains(avoid, preferred) ? Var::fresh(preferred, avoid) : preferred;
}

VarSet free_vars_of(const std::vector<Formula>& fs, const std::vector<Term>& ts) {
  VarSet out;
  for (const Formula& f : fs) out = var_union(out, f.free_vars());
  for (const Term& t : ts) out = var_union(out, t.free_vars());
  return out;
}

std::optional<Counterexample> find_disagreement(const Formula& a, const Formula& b, const Grid& grid,
                                                const std::string& condition, bool& exact, const Env& base) {
  VarSet bound_already;
  for (const auto& [v, _] : base.bindings()) bound_already = var_union(bound_already, {v});
  std::vector<Var> vars = canonical_order(var_minus(free_vars_of({a, b}), bound_already));
  std::optional<Counterexample> found;
  for_each_point(grid, vars, base, [&](const Env& env) {
    Verdict va = eval(a, env, grid.domain_bound), vb = eval(b, env, grid.domain_bound);
    exact = exact && va.exact && vb.exact;
    if (va.value == vb.value) return true;
    std::vector<Var> shown = vars;
    for (const auto& [v, _] : base.bindings()) shown.push_back(v);
    found = Counterexample{condition, snapshot(env, shown), std::nullopt, std::nullopt,
                           std::string(va.value ? "first side holds, second fails" : "first side fails, second holds")};
    return false;
  });
  return found;
}

void require_equivalent(const Formula& a, const Formula& b, const Grid& grid, const std::string& what) {
  bool exact = true;
  if (auto cx = find_disagreement(a, b, grid, what, exact))
    throw EndpointMismatch(what + ": " + to_text(a) + " vs " + to_text(b), *cx);
}

Formula ord_le(const Term& a, const Term& b) { return Formula::eq(olt(a, b), constant(1)) || Formula::eq(a, b); }

Formula ord_lt(const Term& a, const Term& b) { return Formula::eq(olt(a, b), constant(1)); }

Formula big_and(const std::vector<Formula>& fs) { return Formula::conj(fs); }
Formula big_or(const std::vector<Formula>& fs) { return Formula::disj(fs); }

Formula left_side(std::vector<Formula> gamma, const Formula& a) {
  gamma.push_back(a);
  return Formula::conj(std::move(gamma));
}

Formula right_side(std::vector<Formula> delta, const Formula& a) {
  delta.push_back(a);
  return Formula::disj(std::move(delta));
}

}  // namespace ordflow::flow
