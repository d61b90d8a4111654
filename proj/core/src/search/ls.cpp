#include "ordflow/search/ls.hpp"

#include "ordflow/error.hpp"
#include "ordflow/flow/common.hpp"
#include "ordflow/logic/analysis.hpp"
#include "ordflow/logic/classify.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"

#include <algorithm>
#include <functional>

namespace ordflow::search {

using namespace logic;
using flow::ord_le;
using flow::ord_lt;

namespace {

VarSet set_of(const std::vector<Var>& vs) {
  VarSet out;
  for (Var v : vs) out = var_union(out, {v});
  return out;
}

void require_scope(const VarSet& used, const VarSet& allowed, const std::string& what) {
  VarSet extra = var_minus(used, allowed);
  if (!extra.empty()) throw InvalidProgram(what + " mentions " + extra.front().name() + ", which is out of scope");
}

Substitution zip(const std::vector<Var>& vars, const std::vector<Term>& terms) {
  Substitution s;
  for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = terms[i];
  return s;
}

bool holds(const Formula& f, const Env& env) { return eval(f, env, 16).value; }

std::vector<Natural> eval_all(const std::vector<Term>& ts, const Env& env) {
  std::vector<Natural> out;
  out.reserve(ts.size());
  for (const Term& t : ts) out.push_back(eval_term(t, env));
  return out;
}

void bind_all(Env& env, const std::vector<Var>& vars, const std::vector<Natural>& values) {
  for (std::size_t i = 0; i < vars.size(); ++i) env.set(vars[i], values[i]);
}

std::string list(const std::vector<Natural>& vs) {
  std::string out = "(";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + vs[i].str();
  return out + ")";
}

}  // namespace

void require_well_formed(const LSProgram& p) {
  if (p.init.size() != p.state.size()) throw InvalidProgram("init has " + std::to_string(p.init.size()) +
                                                            " terms for " + std::to_string(p.state.size()) +
                                                            " state variables");
  if (p.step.size() != p.state.size()) throw InvalidProgram("step arity differs from the state");
  if (p.project.size() != p.outputs.size()) throw InvalidProgram("project arity differs from the outputs");
  if (p.beta.is_zero()) throw InvalidProgram("beta must be at least 1");
  if (!p.A.valid() || !p.G.valid() || !p.clock.valid()) throw InvalidProgram("missing A, G or clock");
  if (!in_class(p.A, ClassTag::QF())) throw InvalidProgram("A must be quantifier-free");
  if (!in_class(p.G, ClassTag::QF())) throw InvalidProgram("G must be quantifier-free");
  const VarSet xs = set_of(p.inputs), ys = set_of(p.outputs), zs = set_of(p.state);
  if (xs.size() != p.inputs.size() || ys.size() != p.outputs.size() || zs.size() != p.state.size())
    throw InvalidProgram("repeated variable");
  if (var_contains(xs, p.level) || var_contains(zs, p.level) || !var_minus(xs, var_minus(xs, zs)).empty())
    throw InvalidProgram("inputs, state and level must be distinct");
  const VarSet lxz = var_union(var_union(xs, zs), {p.level});
  require_scope(p.A.free_vars(), var_union(xs, ys), "A");
  require_scope(p.G.free_vars(), lxz, "G");
  for (const Term& t : p.init) require_scope(t.free_vars(), xs, "init");
  for (const Term& t : p.step) require_scope(t.free_vars(), lxz, "step");
  require_scope(p.clock.free_vars(), lxz, "clock");
  for (const Term& t : p.project) require_scope(t.free_vars(), var_union(xs, zs), "project");
}

DescentTrace run_ls(const LSProgram& p, const std::vector<Natural>& inputs, std::size_t max_steps) {
  require_well_formed(p);
  if (inputs.size() != p.inputs.size()) throw ArityError("program takes " + std::to_string(p.inputs.size()) + " inputs");
  DescentTrace trace;
  Env env;
  bind_all(env, p.inputs, inputs);
  Ordinal level = p.beta;
  env.set(p.level, encode(level));
  std::vector<Natural> z = eval_all(p.init, env);
  bind_all(env, p.state, z);
  trace.steps.push_back({level, z});

  for (std::size_t k = 0;; ++k) {
    if (!holds(p.G, env)) {
      trace.violation = k == 0 ? "init" : "invariant";
      trace.at = k;
      trace.detail = "G fails at level " + print(level) + " with state " + list(z);
      return trace;
    }
    if (level.is_zero()) break;
    if (k >= max_steps) throw EvalLimit("descent did not finish within " + std::to_string(max_steps) + " steps");
    Ordinal next = decode_or_zero(eval_term(p.clock, env));
    if (!(next < level)) {
      trace.violation = "non_descent";
      trace.at = k;
      trace.detail = "clock goes from " + print(level) + " to " + print(next);
      return trace;
    }
    z = eval_all(p.step, env);
    level = std::move(next);
    env.set(p.level, encode(level));
    bind_all(env, p.state, z);
    trace.steps.push_back({level, z});
  }

  std::vector<Natural> y = eval_all(p.project, env);
  Env out;
  bind_all(out, p.inputs, inputs);
  bind_all(out, p.outputs, y);
  if (!holds(p.A, out)) {
    trace.violation = "output";
    trace.at = trace.steps.size() - 1;
    trace.detail = "A fails for output " + list(y);
    return trace;
  }
  trace.success = true;
  trace.output = std::move(y);
  return trace;
}

FlowVerdict validate_ls(const LSProgram& p, const Grid& grid) {
  require_well_formed(p);
  const StageList levels = stages_upto(p.beta, grid.code_bound);
  FlowVerdict verdict;
  verdict.exact = !levels.truncated;

  std::vector<Var> shown = p.inputs;
  shown.insert(shown.end(), p.state.begin(), p.state.end());
  const Formula g_next = substitute(p.G, [&] {
    Substitution s = zip(p.state, p.step);
    s[p.level] = p.clock;
    return s;
  }());
  const Formula output = substitute(p.A, zip(p.outputs, p.project));

  auto fail = [&](const std::string& cond, const Env& env, std::optional<Ordinal> at, std::string detail) {
    verdict.fail({cond, snapshot(env, shown), std::move(at), std::nullopt, std::move(detail)});
    return false;
  };

  // init
  if (!for_each_point(grid, p.inputs, Env{}, [&](const Env& base) {
        ++verdict.points;
        Env env = base;
        env.set(p.level, encode(p.beta));
        std::vector<Natural> z = eval_all(p.init, env);
        bind_all(env, p.state, z);
        if (!holds(p.G, env)) return fail("init", env, p.beta, "G fails at beta for init state " + list(z));
        return true;
      }))
    return verdict;

  // descent, step
  for (const std::string cond : {"descent", "step"}) {
    for (const auto& [ordinal, code] : levels.stages) {
      if (ordinal.is_zero()) continue;
      Env base;
      base.set(p.level, code);
      bool ok = for_each_point(grid, shown, base, [&](const Env& env) {
        ++verdict.points;
        if (cond == "descent") {
          Ordinal next = decode_or_zero(eval_term(p.clock, env));
          if (!(next < ordinal))
            return fail(cond, env, ordinal, "clock goes from " + print(ordinal) + " to " + print(next));
        } else if (holds(p.G, env) && !holds(g_next, env)) {
          return fail(cond, env, ordinal, "G holds at " + print(ordinal) + " but not after the step");
        }
        return true;
      });
      if (!ok) return verdict;
    }
  }

  // output
  Env zero;
  zero.set(p.level, 0);
  for_each_point(grid, shown, zero, [&](const Env& env) {
    ++verdict.points;
    if (holds(p.G, env) && !holds(output, env))
      return fail("output", env, Ordinal{}, "A fails for output " + list(eval_all(p.project, env)));
    return true;
  });
  return verdict;
}

int ls_condition_index(const std::string& condition) {
  static const std::vector<std::string> names{"init", "descent", "step", "output"};
  auto it = std::find(names.begin(), names.end(), condition);
  return it == names.end() ? 0 : static_cast<int>(it - names.begin()) + 1;
}

namespace {

Formula forall_all(const std::vector<Var>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = Formula::forall(*it, body);
  return body;
}

}  // namespace

flow::OrdinalFlow ls_to_flow(const LSProgram& p) {
  require_well_formed(p);
  const Formula no_output = forall_all(p.outputs, negate(p.A));
  flow::OrdinalFlow f;
  f.var = p.level;
  f.H = forall_all(p.state, negate(p.G)) && no_output;
  f.beta = p.beta;
  f.source = no_output;
  f.target = Formula::bottom();
  return f;
}

namespace {

constexpr std::size_t kMaxCandidates = 4096;

std::vector<Term> value_pool(const std::vector<Var>& vars) {
  std::vector<Term> out;
  for (Var v : vars) out.push_back(Term::var(v));
  out.push_back(constant(0));
  out.push_back(constant(1));
  return out;
}

// All n-tuples over the pool (first component slowest), capped.
std::vector<std::vector<Term>> tuples(const std::vector<Term>& pool, std::size_t n) {
  std::vector<std::vector<Term>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Term>> next;
    for (const auto& prefix : out)
      for (const Term& t : pool) {
        if (next.size() >= kMaxCandidates) break;
        auto v = prefix;
        v.push_back(t);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

Term code_term(const Ordinal& a) { return constant(encode(a)); }

struct Search {
  const Grid& grid;
  std::vector<Var> inputs;
  std::vector<Var> zs;
  Var level;
  Formula I;
  Formula A;
  std::vector<Var> ys;
  Ordinal beta;
  StageList stages;

  std::vector<Var> all() const {
    std::vector<Var> v = inputs;
    v.insert(v.end(), zs.begin(), zs.end());
    return v;
  }

  Formula I_at(const Term& lvl, const std::vector<Term>& state) const {
    Substitution s = zip(zs, state);
    s[level] = lvl;
    return substitute(I, s);
  }

  // not A(x, Y) -> I(0, x, zs)
  bool y_ok(const std::vector<Term>& Y) const {
    Formula cond = implies(negate(substitute(A, zip(ys, Y))), substitute(I, level, code_term(Ordinal{})));
    return for_each_point(grid, all(), Env{}, [&](const Env& env) { return holds(cond, env); });
  }

  // not I(beta, x, W)
  bool w_ok(const std::vector<Term>& W) const {
    Formula cond = negate(I_at(code_term(beta), W));
    return for_each_point(grid, inputs, Env{}, [&](const Env& env) { return holds(cond, env); });
  }

  // not I(d, x, zs) -> Delta < d and not I(Delta, x, Z), for 0 < d <= beta
  bool step_ok(const Term& delta, const std::vector<Term>& Z) const {
    Formula cond = implies(negate(I), ord_lt(delta, Term::var(level)) && negate(I_at(delta, Z)));
    for (const auto& [ordinal, code] : stages.stages) {
      if (ordinal.is_zero()) continue;
      Env base;
      base.set(level, code);
      if (!for_each_point(grid, all(), base, [&](const Env& env) { return holds(cond, env); })) return false;
    }
    return true;
  }
};

[[noreturn]] void search_failed(const std::string& which, const std::string& condition) {
  throw WitnessSearchFailed("no witness " + which + " found among the candidate terms",
                            Counterexample{condition, {}, std::nullopt, std::nullopt, "witness " + which});
}

}  // namespace

FlowToLS flow_to_ls(const flow::OrdinalFlow& f, const Grid& grid, const std::optional<LSWitnesses>& given) {
  bool exact = true;
  if (auto cx = flow::find_disagreement(f.target, Formula::bottom(), grid, "target", exact))
    throw ShapeViolation("the flow's target is not false: " + cx->describe());

  std::vector<Var> ys;
  Formula body = f.source;
  while (body.kind() == FKind::forall) {
    ys.push_back(body.bound_var());
    body = body.body();
  }
  if (!in_class(body, ClassTag::QF()))
    throw ShapeViolation("the flow's source is not of the form forall y. not A with A quantifier-free");

  auto [zs, I] = prenex_universal(f.H);
  Search s{grid,
           canonical_order(f.params()),
           zs,
           f.var,
           I,
           negate(body),
           ys,
           f.beta,
           stages_upto(f.beta, grid.code_bound)};

  LSWitnesses w;
  if (given) {
    w = *given;
    if (w.Y.size() != ys.size() || w.W.size() != zs.size() || w.Z.size() != zs.size() || !w.Delta.valid())
      throw InvalidProgram("witness arities do not match the flow");
    if (!s.y_ok(w.Y)) search_failed("Y", "output");
    if (!s.w_ok(w.W)) search_failed("W", "init");
    if (!s.step_ok(w.Delta, w.Z)) search_failed("Delta, Z", "step");
  } else {
    std::vector<Var> xz = s.all();
    const auto plain = tuples(value_pool(xz), ys.size());
    std::vector<std::vector<Term>> y_cands = plain;
    for (const auto& c1 : plain) {
      Formula good = substitute(s.A, zip(ys, c1));
      for (const auto& c2 : plain) {
        if (y_cands.size() >= kMaxCandidates) break;
        std::vector<Term> guarded;
        for (std::size_t i = 0; i < c1.size(); ++i) guarded.push_back(if_then_else(good, c1[i], c2[i]));
        y_cands.push_back(std::move(guarded));
      }
    }
    auto y = std::find_if(y_cands.begin(), y_cands.end(), [&](const auto& c) { return s.y_ok(c); });
    if (y == y_cands.end()) search_failed("Y", "output");
    w.Y = *y;

    const auto w_cands = tuples(value_pool(s.inputs), zs.size());
    auto wi = std::find_if(w_cands.begin(), w_cands.end(), [&](const auto& c) { return s.w_ok(c); });
    if (wi == w_cands.end()) search_failed("W", "init");
    w.W = *wi;

    const Term lv = Term::var(f.var);
    std::vector<Term> deltas{code_term(Ordinal{}), omonus(lv, code_term(Ordinal::one()))};
    for (Var z : zs) deltas.push_back(Term::var(z));
    const auto z_cands = tuples(value_pool(xz), zs.size());
    bool found = false;
    for (std::size_t i = 0; i < deltas.size() && !found; ++i)
      for (const auto& z : z_cands)
        if (s.step_ok(deltas[i], z)) {
          w.Delta = deltas[i];
          w.Z = z;
          found = true;
          break;
        }
    if (!found) search_failed("Delta, Z", "step");
  }

  FlowToLS out;
  LSProgram& p = out.program;
  p.inputs = s.inputs;
  p.outputs = ys;
  p.state = zs;
  p.level = f.var;
  p.A = s.A;
  p.init = w.W;
  p.G = negate(I) && ord_le(Term::var(f.var), code_term(f.beta));
  p.step = w.Z;
  p.clock = if_then_else(p.G, w.Delta, code_term(Ordinal{}));
  p.project = w.Y;
  p.beta = f.beta;
  out.witnesses = std::move(w);
  out.matrix_vars = zs;
  out.matrix = I;
  return out;
}

}  // namespace ordflow::search
