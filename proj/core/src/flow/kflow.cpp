#include "ordflow/flow/kflow.hpp"

#include "ordflow/error.hpp"
#include "ordflow/logic/analysis.hpp"
#include "ordflow/logic/classify.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"

#include <algorithm>

namespace ordflow::flow {

using namespace logic;

namespace {

constexpr unsigned kMaxStages = 1u << 20;

void require_level(const Formula& f, unsigned k, const char* role) {
  if (!in_class(f, ClassTag::PiHat(k)))
    throw ClassViolation(std::string(role) + " is not in the bounded universal class at level " + std::to_string(k) +
                         ": " + to_text(f));
}

// Renames the stage variable when it clashes with `extra`.
KFlow avoid_stage_clash(const KFlow& f, const VarSet& extra) {
  if (!var_contains(extra, f.var)) return f;
  KFlow out = f;
  out.var = pick_stage_var(f.var, var_union(f.params(), extra));
  out.H = f.at(Term::var(out.var));
  return out;
}

Natural small_value(const Term& t, const Env& env, const char* what) {
  Natural v = eval_term(t, env);
  if (v > kMaxStages) throw EvalLimit(std::string(what) + " " + v.str() + " is too large to enumerate");
  return v;
}

}  // namespace

Formula KFlow::at(const Term& stage) const { return substitute(H, var, stage); }

VarSet KFlow::params() const { return var_minus(free_vars_of({H, source, target}, {length}), {var}); }

KFlow make_kflow(Var var, Formula h, Term length, unsigned k, Formula source, Formula target) {
  const bool poly = is_poly_length(length);
  return {var, std::move(h), std::move(length), k, std::move(source), std::move(target), poly};
}

KFlow kflow_from_implication(const Formula& a, const Formula& b, unsigned k) {
  require_level(a, k, "source");
  require_level(b, k, "target");
  Var u = pick_stage_var(default_k_stage_var(), free_vars_of({a, b}));
  const Term ut = Term::var(u);
  Formula h = (Formula::neq(ut, constant(0)) || a) && (Formula::neq(ut, constant(1)) || b);
  return make_kflow(u, h, constant(1), k, a, b);
}

namespace {

KFlow with_context(const KFlow& f, const Formula& c, bool conj) {
  require_level(c, f.k, "context");
  KFlow out = avoid_stage_clash(f, c.free_vars());
  auto op = [&](const Formula& x) { return conj ? (x && c) : (x || c); };
  out.H = op(out.H);
  out.source = op(f.source);
  out.target = op(f.target);
  return out;
}

}  // namespace

KFlow kflow_and_context(const KFlow& f, const Formula& c) { return with_context(f, c, true); }
KFlow kflow_or_context(const KFlow& f, const Formula& c) { return with_context(f, c, false); }

KFlow glue_seq_k(const KFlow& f1, const KFlow& f2, const Grid& grid) {
  require_equivalent(f1.target, f2.source, grid, "gluing seam");
  Var u = pick_stage_var(f1.var, var_union(f1.params(), f2.params()));
  const Term ut = Term::var(u);
  const Term& t = f1.length;
  Formula first = Formula::nle(ut, t) || f1.at(ut);
  Formula second = Formula::le(ut, t) || f2.at(ut - (t + constant(1)));
  return make_kflow(u, first && second, (t + f2.length) + constant(1), std::max(f1.k, f2.k), f1.source, f2.target);
}

KFlow with_endpoints(const KFlow& f, const Formula& source, const Formula& target, const Grid& grid) {
  require_equivalent(f.source, source, grid, "source");
  require_equivalent(f.target, target, grid, "target");
  KFlow out = avoid_stage_clash(f, free_vars_of({source, target}));
  out.source = source;
  out.target = target;
  return out;
}

KFlow instantiate(const KFlow& f, Var param, const Term& value) {
  KFlow out = avoid_stage_clash(f, value.free_vars());
  out.H = substitute(out.H, param, value);
  out.length = substitute(f.length, param, value);
  out.source = substitute(f.source, param, value);
  out.target = substitute(f.target, param, value);
  out.polynomial = is_poly_length(out.length);
  return out;
}

KFlow pad(const KFlow& f0, const Term& s, const Grid& grid) {
  KFlow f = avoid_stage_clash(f0, s.free_vars());
  std::vector<Var> vars = canonical_order(var_union(f.params(), s.free_vars()));
  std::optional<Counterexample> cx;
  for_each_point(grid, vars, Env{}, [&](const Env& env) {
    Natural t = eval_term(f.length, env), sv = eval_term(s, env);
    if (t <= sv) return true;
    cx = Counterexample{"pad bound", snapshot(env, vars), std::nullopt, std::nullopt,
                        "length " + t.str() + " exceeds " + sv.str()};
    return false;
  });
  if (cx) throw BoundViolation("padding target " + to_text(s) + " is below the length " + to_text(f.length), *cx);
  const Term ut = Term::var(f.var);
  Formula h = (Formula::nle(ut, f.length) || f.H) && (Formula::le(ut, f.length) || f.target);
  return make_kflow(f.var, h, s, f.k, f.source, f.target);
}

BoundedFlow bound_params(const KFlow& f0, Var y, const Term& s, const Grid& grid) {
  if (s.mentions(y)) throw FreeVariableViolation("the bound " + to_text(s) + " depends on " + y.name());
  KFlow f = avoid_stage_clash(f0, var_union(s.free_vars(), {y}));
  const Term ut = Term::var(f.var);
  Formula i = (Formula::nle(ut, f.length) || f.H) && (Formula::le(ut, f.length) || f.target);
  Term r = substitute(f.length, y, exp2(bitlen_bound(s)));

  std::vector<Var> xs = canonical_order(var_minus(var_union(f.params(), s.free_vars()), {y}));
  std::optional<Counterexample> cx;
  auto fail = [&](const char* cond, const Env& env, std::optional<Natural> u, std::string detail) {
    std::vector<Var> shown = xs;
    shown.push_back(y);
    cx = Counterexample{cond, snapshot(env, shown), std::nullopt, std::move(u), std::move(detail)};
    return false;
  };
  for_each_point(grid, xs, Env{}, [&](const Env& base) {
    Env env = base;
    const Natural rv = small_value(r, env, "bound length");
    const Natural sv = eval_term(s, env);
    if (rv < 1) return fail("r >= 1", env, std::nullopt, "r = 0");
    const Natural ymax = std::max(sv, grid.range_of(y));
    env.push(y, 0);
    env.push(f.var, 0);
    for (Natural yv = 0; yv <= ymax; ++yv) {
      env.set(y, yv);
      env.set(f.var, 0);
      const Natural tv = small_value(f.length, env, "length");
      if (yv <= sv && tv > rv)
        return fail("monotone length", env, std::nullopt,
                    "length " + tv.str() + " exceeds r = " + rv.str() + "; pad the flow first");
      auto holds = [&](const Formula& g) { return eval(g, env, grid.domain_bound).value; };
      bool prev = holds(i);
      if (prev != holds(f.source)) return fail("I(0) = source", env, Natural(0), "");
      const Natural umax = std::max(rv, tv) + 1;
      for (Natural uv = 1; uv <= umax; ++uv) {
        env.set(f.var, uv);
        bool cur = holds(i);
        if (prev && !cur) return fail("I(u) -> I(u+1)", env, Natural(uv - 1), "");
        if (uv == rv && yv <= sv && cur != holds(f.target)) return fail("I(r) = target", env, uv, "");
        prev = cur;
      }
    }
    return true;
  });
  if (cx) throw PreconditionFailed("bounded-parameter construction fails on the grid: " + cx->describe());
  return {f.var, i, r};
}

namespace {

struct StageFlow {
  KFlow flow;  // from E(previous) to E(y)
  Formula e;   // Gamma and D(y)
  unsigned k;
};

StageFlow stage_flow(const std::vector<Formula>& gamma, const Formula& d, Var y, const KFlow& step,
                     const Term& previous, const Grid& grid) {
  Formula e = left_side(gamma, d);
  unsigned k = step.k;
  require_level(e, k, "induction formula");
  KFlow f = kflow_and_context(step, big_and(gamma));
  f = with_endpoints(f, substitute(e, y, previous), e, grid);
  return {f, e, k};
}

}  // namespace

KFlow strong_glue_pind(const std::vector<Formula>& gamma, const Formula& d, Var y, const KFlow& step, const Term& s,
                       const Grid& grid, KFlow* core) {
  if (!step.polynomial) throw NotPolynomial("the step flow is not polynomial: length " + to_text(step.length));
  if (!is_poly_size(s)) throw NotPolynomial("the bound " + to_text(s) + " is not of polynomial size");
  if (s.mentions(y)) throw FreeVariableViolation("the bound " + to_text(s) + " depends on " + y.name());
  const Term yt = Term::var(y);
  StageFlow st = stage_flow(gamma, d, y, step, half(yt), grid);
  const Term two_s = constant(2) * s;
  BoundedFlow b = bound_params(st.flow, y, two_s, grid);

  Var u = pick_stage_var(b.var, var_union(free_vars_of({b.I}, {s}), {y}));
  const Term ut = Term::var(u);
  const Term& tp = b.r;
  const Term block = ut / tp;
  // Y(z) halves 2s (|s| + 1 - z) times: Y(0) = 0, Y(|s|) = s, Y(|s| + 1) = 2s.
  auto y_at = [&](const Term& z) { return shr(two_s, (bitlen(s) + constant(1)) - z); };
  Formula i = substitute(b.I, Substitution{{b.var, ut - tp * block}, {y, y_at(block + constant(1))}});
  KFlow chain =
      make_kflow(u, i, tp * bitlen(s), st.k, substitute(st.e, y, constant(0)), substitute(st.e, y, s));
  if (core) *core = chain;
  return glue_seq_k(chain, kflow_from_implication(chain.target, substitute(d, y, s), st.k), grid);
}

KFlow strong_glue_ind(const std::vector<Formula>& gamma, const Formula& d, Var y, const KFlow& step, const Term& s,
                      const Grid& grid, KFlow* core) {
  if (s.mentions(y)) throw FreeVariableViolation("the bound " + to_text(s) + " depends on " + y.name());
  const Term yt = Term::var(y);
  Formula e = left_side(gamma, d);
  require_level(e, step.k, "induction formula");
  KFlow f = kflow_and_context(step, big_and(gamma));
  f = with_endpoints(f, e, substitute(e, y, yt + constant(1)), grid);
  BoundedFlow b = bound_params(f, y, s, grid);

  Var u = pick_stage_var(b.var, var_union(free_vars_of({b.I}, {s}), {y}));
  const Term ut = Term::var(u);
  const Term& tp = b.r;
  const Term block = ut / tp;
  Formula i = substitute(b.I, Substitution{{b.var, ut - tp * block}, {y, block}});
  KFlow chain = make_kflow(u, i, tp * s, step.k, substitute(e, y, constant(0)), substitute(e, y, s));
  if (core) *core = chain;
  return glue_seq_k(chain, kflow_from_implication(chain.target, substitute(d, y, s), step.k), grid);
}

KFlow neg_rule_left(const KFlow& f, const std::vector<Formula>& gamma, const std::vector<Formula>& delta,
                    const Formula& a, const Grid& grid) {
  const Formula na = negate(a);
  require_level(a, f.k, "principal formula");
  require_level(na, f.k, "negated principal formula");
  KFlow given = with_endpoints(f, left_side(gamma, a), big_or(delta), grid);
  KFlow ctx = kflow_or_context(given, na);
  KFlow pre = kflow_from_implication(big_and(gamma), ctx.source, f.k);
  return with_endpoints(glue_seq_k(pre, ctx, grid), big_and(gamma), right_side(delta, na), grid);
}

KFlow neg_rule_right(const KFlow& f, const std::vector<Formula>& gamma, const std::vector<Formula>& delta,
                     const Formula& a, const Grid& grid) {
  const Formula na = negate(a);
  require_level(a, f.k, "principal formula");
  require_level(na, f.k, "negated principal formula");
  KFlow given = with_endpoints(f, big_and(gamma), right_side(delta, a), grid);
  KFlow ctx = kflow_and_context(given, na);
  KFlow post = kflow_from_implication(ctx.target, big_or(delta), f.k);
  return with_endpoints(glue_seq_k(ctx, post, grid), left_side(gamma, na), big_or(delta), grid);
}

KFlow bounded_forall_intro(const KFlow& f, const Formula& a, const Formula& b, Var y, const Term& s,
                           const Grid& grid) {
  if (a.mentions(y)) throw FreeVariableViolation("the side formula " + to_text(a) + " depends on " + y.name());
  if (s.mentions(y)) throw FreeVariableViolation("the bound " + to_text(s) + " depends on " + y.name());
  const Term yt = Term::var(y);
  KFlow moved = neg_rule_left(f, {a}, {b}, Formula::le(yt, s), grid);
  BoundedFlow bp = bound_params(moved, y, s, grid);
  Var u = bp.var;
  if (u == y) throw ShapeViolation("stage variable coincides with the quantified variable");
  return make_kflow(u, Formula::forall_le(y, s, bp.I), bp.r, f.k, a, Formula::forall_le(y, s, b));
}

FlowVerdict check_kflow(const KFlow& f, const Grid& grid) {
  FlowVerdict verdict;
  bool exact = true;
  std::vector<Var> params = canonical_order(f.params());
  for_each_point(grid, params, Env{}, [&](const Env& base) {
    ++verdict.points;
    const Natural t = small_value(f.length, base, "length");
    Env env = base;
    env.push(f.var, 0);
    auto h_at = [&](const Natural& u) {
      env.set(f.var, u);
      Verdict v = eval(f.H, env, grid.domain_bound);
      exact = exact && v.exact;
      return v.value;
    };
    auto endpoint = [&](const Formula& side, bool h, const Natural& u, const char* name) {
      Verdict v = eval(side, base, grid.domain_bound);
      exact = exact && v.exact;
      if (v.value == h) return true;
      verdict.fail({name, snapshot(base, params), std::nullopt, u,
                    std::string(name) + " is " + (v.value ? "true" : "false") + " but H is " +
                        (h ? "true" : "false")});
      return false;
    };
    bool prev = h_at(0);
    if (!endpoint(f.source, prev, 0, "source")) return false;
    for (Natural u = 1; u <= t; ++u) {
      bool cur = h_at(u);
      if (prev && !cur) {
        verdict.fail({"step", snapshot(base, params), std::nullopt, Natural(u - 1),
                      "H(" + Natural(u - 1).str() + ") holds but H(" + u.str() + ") fails"});
        return false;
      }
      prev = cur;
    }
    return endpoint(f.target, prev, t, "target");
  });
  verdict.exact = exact;
  return verdict;
}

}  // namespace ordflow::flow
