#include "ordflow/flow/ordinal_flow.hpp"

#include "ordflow/error.hpp"
#include "ordflow/logic/classify.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"

#include <algorithm>

namespace ordflow::flow {

using namespace logic;

namespace {

Term code_of(const Ordinal& a) { return constant(encode(a)); }

void require_universal(const Formula& f, const char* role) {
  if (!classify(f).forall1)
    throw ClassViolation(std::string(role) + " is not a universal formula: " + to_text(f));
}

}  // namespace

Formula OrdinalFlow::at(const Ordinal& stage) const { return substitute(H, var, code_of(stage)); }
Formula OrdinalFlow::at(const Term& stage_code) const { return substitute(H, var, stage_code); }

VarSet OrdinalFlow::params() const { return var_minus(free_vars_of({H, source, target}), {var}); }

Formula forall_below(Var g, const Term& bound, const Formula& body) {
  const Term gt = Term::var(g);
  return Formula::forall(
      g, Formula::disj({Formula::neq(ovalid(gt), constant(1)), Formula::neq(olt(gt, bound), constant(1)), body}));
}

OrdinalFlow flow_from_implication(const Formula& a, const Formula& b) {
  require_universal(a, "source");
  require_universal(b, "target");
  Var g = pick_stage_var(default_ordinal_stage_var(), free_vars_of({a, b}));
  const Term gt = Term::var(g);
  Formula h = (Formula::neq(gt, code_of(Ordinal::zero())) || a) && (Formula::neq(gt, code_of(Ordinal::one())) || b);
  return {g, h, Ordinal::one(), a, b};
}

namespace {

OrdinalFlow with_context(const OrdinalFlow& f, const Formula& c, bool conj) {
  require_universal(c, "context");
  OrdinalFlow out = f;
  if (c.mentions(f.var)) {
    out.var = pick_stage_var(f.var, var_union(f.params(), c.free_vars()));
    out.H = f.at(Term::var(out.var));
  }
  auto op = [&](const Formula& x) { return conj ? (x && c) : (x || c); };
  out.H = op(out.H);
  out.source = op(f.source);
  out.target = op(f.target);
  return out;
}

}  // namespace

OrdinalFlow flow_and_context(const OrdinalFlow& f, const Formula& c) { return with_context(f, c, true); }
OrdinalFlow flow_or_context(const OrdinalFlow& f, const Formula& c) { return with_context(f, c, false); }

OrdinalFlow glue_seq_ordinal(const OrdinalFlow& f1, const OrdinalFlow& f2, const Grid& grid) {
  require_equivalent(f1.target, f2.source, grid, "gluing seam");
  Var g = pick_stage_var(f1.var, var_union(f1.params(), f2.params()));
  const Term gt = Term::var(g);
  const Term b = code_of(f1.beta);
  const Ordinal total = add(f1.beta, f2.beta);
  Formula first = Formula::disj({negate(ord_le(gt, b)), f1.at(gt)});
  Formula second =
      Formula::disj({ord_le(gt, b), negate(ord_le(gt, code_of(total))), f2.at(omonus(gt, b))});
  return {g, first && second, total, f1.source, f2.target};
}

OrdinalFlow with_endpoints(const OrdinalFlow& f, const Formula& source, const Formula& target, const Grid& grid) {
  require_equivalent(f.source, source, grid, "source");
  require_equivalent(f.target, target, grid, "target");
  OrdinalFlow out = f;
  out.source = source;
  out.target = target;
  if (var_contains(free_vars_of({source, target}), f.var)) {
    out.var = pick_stage_var(f.var, var_union(f.params(), free_vars_of({source, target})));
    out.H = f.at(Term::var(out.var));
  }
  return out;
}

OrdinalFlow instantiate(const OrdinalFlow& f, Var param, const Term& value) {
  OrdinalFlow out = f;
  if (value.mentions(f.var)) {
    out.var = pick_stage_var(f.var, var_union(f.params(), value.free_vars()));
    out.H = f.at(Term::var(out.var));
  }
  out.H = substitute(out.H, param, value);
  out.source = substitute(f.source, param, value);
  out.target = substitute(f.target, param, value);
  return out;
}

namespace {

struct LimitShape {
  std::vector<Formula> gamma;
  Var g;
  Formula a;
};

LimitShape match_limit_shape(const Formula& b, Var d) {
  std::vector<Formula> parts = b.kind() == FKind::conj ? b.parts() : std::vector<Formula>{b};
  std::optional<LimitShape> found;
  std::vector<Formula> rest;
  for (const Formula& p : parts) {
    if (!found && p.kind() == FKind::forall && p.body().kind() == FKind::disj && p.body().parts().size() == 3) {
      const Var g = p.bound_var();
      const Term gt = Term::var(g);
      const auto& q = p.body().parts();
      if (q[0] == Formula::neq(ovalid(gt), constant(1)) && q[1] == Formula::neq(olt(gt, Term::var(d)), constant(1))) {
        found = LimitShape{{}, g, q[2]};
        continue;
      }
    }
    if (p.mentions(d))
      throw ShapeViolation("conjunct " + to_text(p) + " depends on " + d.name() +
                           " outside the bounded-below universal part");
    rest.push_back(p);
  }
  if (!found)
    throw ShapeViolation("formula " + to_text(b) + " has no conjunct of the form forall g. (g < " + d.name() +
                         " -> A(g))");
  found->gamma = std::move(rest);
  return *found;
}

}  // namespace

OrdinalFlow transfinite_iterate(const OrdinalFlow& step, const Formula& b, Var d, const Ordinal& theta,
                                const Grid& grid) {
  match_limit_shape(b, d);
  if (d == step.var) throw ShapeViolation("the iteration parameter coincides with the stage variable");
  const Term dt = Term::var(d);
  Grid codes = grid;
  codes.use_codes(d);
  require_equivalent(step.source, b, codes, "step source");
  require_equivalent(step.target, substitute(b, d, oadd(dt, code_of(Ordinal::one()))), codes, "step target");

  VarSet params = var_minus(step.params(), {d});
  Var tau = pick_stage_var(step.var, var_union(params, {d}));
  const Term tt = Term::var(tau);
  const Term bc = code_of(step.beta);
  const Term quotient = odiv(tt, bc);
  Formula i = substitute(step.H, Substitution{{step.var, omonus(tt, omul(bc, quotient))}, {d, quotient}});
  const Ordinal next = add(theta, Ordinal::one());
  return {tau, i, mul(step.beta, next), substitute(b, d, code_of(Ordinal::zero())), substitute(b, d, code_of(next))};
}

OrdinalFlow transfinite_induction(const OrdinalFlow& step, const Formula& b, Var d, const Ordinal& theta,
                                  const Grid& grid) {
  LimitShape shape = match_limit_shape(b, d);
  OrdinalFlow iterated = transfinite_iterate(step, b, d, theta, grid);
  Formula gamma = big_and(shape.gamma);
  Formula a_theta = substitute(shape.a, shape.g, code_of(theta));
  OrdinalFlow open = flow_from_implication(gamma, iterated.source);
  OrdinalFlow close = flow_from_implication(iterated.target, a_theta);
  return glue_seq_ordinal(glue_seq_ordinal(open, iterated, grid), close, grid);
}

FlowVerdict check_ordinal_flow(const OrdinalFlow& f, const Grid& grid) {
  const StageList list = stages_upto(f.beta, grid.code_bound);
  const bool truncated = list.truncated;

  FlowVerdict verdict;
  bool exact = true;
  std::vector<Var> params = canonical_order(f.params());
  for_each_point(grid, params, Env{}, [&](const Env& base) {
    ++verdict.points;
    Env env = base;
    env.push(f.var, 0);
    auto at_stage = [&](const Natural& code) {
      env.set(f.var, code);
      Verdict v = eval(f.H, env, grid.domain_bound);
      exact = exact && v.exact;
      return v.value;
    };
    auto endpoint = [&](const Formula& side, bool h_value, const Ordinal& stage, const char* name) {
      Verdict v = eval(side, base, grid.domain_bound);
      exact = exact && v.exact;
      if (v.value == h_value) return true;
      verdict.fail({name, snapshot(base, params), stage, std::nullopt,
                    std::string(name) + " is " + (v.value ? "true" : "false") + " but H is " +
                        (h_value ? "true" : "false")});
      return false;
    };
    std::vector<bool> values;
    bool prefix = true;
    for (const auto& [ordinal, code] : list.stages) {
      bool v = at_stage(code);
      if (values.empty()) {
        if (!endpoint(f.source, v, ordinal, "source")) return false;
      } else if (prefix && !v) {
        verdict.fail({"step", snapshot(base, params), ordinal, std::nullopt,
                      "H holds at every earlier stage but fails at " + print(ordinal)});
        return false;
      }
      values.push_back(v);
      prefix = prefix && v;
    }
    return endpoint(f.target, values.back(), f.beta, "target");
  });
  verdict.exact = exact && !truncated;
  return verdict;
}

}  // namespace ordflow::flow
