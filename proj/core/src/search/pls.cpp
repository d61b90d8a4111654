#include "ordflow/search/pls.hpp"

#include "ordflow/error.hpp"
#include "ordflow/logic/analysis.hpp"
#include "ordflow/logic/classify.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"

#include <algorithm>

namespace ordflow::search {

using namespace logic;

namespace {

constexpr unsigned long kMaxStates = 1000000;

Verdict check(const Formula& f, const Env& env) { return eval(f, env, 16); }

void require_scope(const VarSet& used, const VarSet& allowed, const std::string& what) {
  VarSet extra = var_minus(used, allowed);
  if (!extra.empty()) throw InvalidProgram(what + " mentions " + extra.front().name() + ", which is out of scope");
}

VarSet set_of(const std::vector<Var>& vs) {
  VarSet out;
  for (Var v : vs) out = var_union(out, {v});
  return out;
}

void bind_all(Env& env, const std::vector<Var>& vars, const std::vector<Natural>& values) {
  for (std::size_t i = 0; i < vars.size(); ++i) env.set(vars[i], values[i]);
}

}  // namespace

void require_well_formed(const PLS1Program& p) {
  if (!p.A.valid() || !p.G.valid() || !p.bound.valid() || !p.init.valid() || !p.step.valid() || !p.project.valid() ||
      !p.length.valid() || !p.out_bound.valid())
    throw InvalidProgram("incomplete program");
  if (p.k < 1) throw InvalidProgram("k must be at least 1");
  if (!in_class(p.A, ClassTag::PiHat(p.k - 1)))
    throw InvalidProgram("A is not in " + to_string(ClassTag::PiHat(p.k - 1)));
  if (!in_class(p.G, ClassTag::QF())) throw InvalidProgram("G must be quantifier-free");
  const VarSet xs = set_of(p.inputs);
  if (xs.size() != p.inputs.size()) throw InvalidProgram("repeated input variable");
  for (Var v : {p.output, p.level, p.state})
    if (var_contains(xs, v)) throw InvalidProgram(v.name() + " is both an input and a program variable");
  if (p.level == p.state) throw InvalidProgram("level and state must be distinct");
  const VarSet xuz = var_union(xs, set_of({p.level, p.state}));
  require_scope(p.A.free_vars(), var_union(xs, {p.output}), "A");
  require_scope(p.G.free_vars(), xuz, "G");
  require_scope(p.step.free_vars(), xuz, "step");
  require_scope(p.project.free_vars(), var_union(xs, {p.state}), "project");
  for (auto [t, what] : {std::pair{&p.bound, "bound"}, {&p.init, "init"}, {&p.length, "length"},
                         {&p.out_bound, "output bound"}})
    require_scope(t->free_vars(), xs, what);
}

PLS1Trace run_pls1(const PLS1Program& p, const std::vector<Natural>& inputs, std::size_t max_steps) {
  require_well_formed(p);
  if (inputs.size() != p.inputs.size()) throw ArityError("program takes " + std::to_string(p.inputs.size()) + " inputs");
  PLS1Trace trace;
  Env env;
  bind_all(env, p.inputs, inputs);
  const Natural s = eval_term(p.bound, env), t = eval_term(p.length, env), r = eval_term(p.out_bound, env);
  if (t > max_steps) throw EvalLimit("length " + t.str() + " exceeds the step limit");
  auto fail = [&](std::string kind, const Natural& at, std::string detail) {
    trace.violation = std::move(kind);
    trace.at = at;
    trace.detail = std::move(detail);
    return trace;
  };

  Natural z = eval_term(p.init, env);
  trace.states.push_back(z);
  if (z > s) return fail("init-bound", 0, "init = " + z.str() + " exceeds " + s.str());
  env.set(p.level, 0);
  env.set(p.state, z);
  if (!check(p.G, env).value) return fail("init", 0, "G fails at the initial state " + z.str());
  for (Natural u = 0; u < t; ++u) {
    env.set(p.level, u);
    env.set(p.state, z);
    z = eval_term(p.step, env);
    trace.states.push_back(z);
    if (z > s) return fail("bound", u, "step at level " + u.str() + " gives " + z.str() + ", above " + s.str());
    env.set(p.level, u + 1);
    env.set(p.state, z);
    if (!check(p.G, env).value) return fail("invariant", u + 1, "G fails at level " + Natural(u + 1).str());
  }
  env.set(p.state, z);
  Natural y = eval_term(p.project, env);
  if (y > r) return fail("output-bound", t, "output " + y.str() + " exceeds " + r.str());
  env.set(p.output, y);
  if (!check(p.A, env).value) return fail("output", t, "A fails for output " + y.str());
  trace.success = true;
  trace.output = y;
  return trace;
}

FlowVerdict validate_pls1(const PLS1Program& p, const Grid& grid) {
  require_well_formed(p);
  FlowVerdict verdict;
  bool exact = true;
  const Formula g_next = substitute(p.G, {{p.level, succ(Term::var(p.level))}, {p.state, p.step}});
  const Formula g_end = substitute(p.G, p.level, p.length);
  const Formula output = substitute(p.A, p.output, p.project);

  auto shown = [&](bool with_u, bool with_z) {
    std::vector<Var> v = p.inputs;
    if (with_u) v.push_back(p.level);
    if (with_z) v.push_back(p.state);
    return v;
  };
  auto fail = [&](const std::string& cond, const Env& env, bool with_u, bool with_z, std::string detail) {
    std::optional<Natural> step;
    if (with_u) step = env.at(p.level);
    verdict.fail({cond, snapshot(env, shown(with_u, with_z)), std::nullopt, step, std::move(detail)});
    return false;
  };
  // Visits z in [0, s(x)] (and u in [0, max(range, t(x))] when asked) for every grid input.
  auto sweep = [&](bool with_u, const std::function<bool(Env&)>& visit) {
    return for_each_point(grid, p.inputs, Env{}, [&](const Env& base) {
      Env env = base;
      const Natural s = eval_term(p.bound, env);
      if (s > kMaxStates) throw EvalLimit("state bound " + s.str() + " is too large to enumerate");
      Natural umax = 0;
      if (with_u) umax = std::max(grid.range_of(p.level), eval_term(p.length, env));
      env.push(p.level, 0);
      env.push(p.state, 0);
      for (Natural u = 0; u <= umax; ++u) {
        env.set(p.level, u);
        for (Natural z = 0; z <= s; ++z) {
          env.set(p.state, z);
          ++verdict.points;
          if (!visit(env)) return false;
        }
      }
      return true;
    });
  };

  bool ok = for_each_point(grid, p.inputs, Env{}, [&](const Env& base) {
    ++verdict.points;
    Env env = base;
    const Natural s = eval_term(p.bound, env), i = eval_term(p.init, env);
    if (i > s) return fail("init-bound", env, false, false, "init = " + i.str() + " exceeds " + s.str());
    return true;
  });
  ok = ok && for_each_point(grid, p.inputs, Env{}, [&](const Env& base) {
    Env env = base;
    env.push(p.level, 0);
    env.push(p.state, eval_term(p.init, env));
    Verdict v = check(p.G, env);
    exact = exact && v.exact;
    if (!v.value) return fail("init", env, false, false, "G fails at level 0 for the initial state");
    return true;
  });
  ok = ok && sweep(true, [&](Env& env) {
    const Natural n = eval_term(p.step, env), s = eval_term(p.bound, env);
    if (n > s) return fail("bound", env, true, true, "step gives " + n.str() + ", above " + s.str());
    return true;
  });
  ok = ok && sweep(true, [&](Env& env) {
    if (check(p.G, env).value && !check(g_next, env).value)
      return fail("step", env, true, true, "G holds but fails after the step");
    return true;
  });
  ok = ok && sweep(false, [&](Env& env) {
    const Natural y = eval_term(p.project, env), r = eval_term(p.out_bound, env);
    if (y > r) return fail("output-bound", env, false, true, "project gives " + y.str() + ", above " + r.str());
    return true;
  });
  ok = ok && sweep(false, [&](Env& env) {
    if (!check(g_end, env).value) return true;
    Verdict v = check(output, env);
    exact = exact && v.exact;
    if (!v.value) return fail("output", env, false, true, "G holds at the last level but A fails");
    return true;
  });
  verdict.exact = exact;
  return verdict;
}

int pls1_condition_index(const std::string& condition) {
  static const std::vector<std::string> names{"init-bound", "init", "bound", "step", "output-bound", "output"};
  auto it = std::find(names.begin(), names.end(), condition);
  return it == names.end() ? 0 : static_cast<int>(it - names.begin()) + 1;
}

CompiledPLS1 compile_pls1(const PLS1Program& p, const std::string& name) {
  require_well_formed(p);
  if (!is_poly_length(p.length))
    throw NotPolynomialLength("the length " + to_text(p.length) + " is not a polynomial in the input lengths");
  VarSet taken = var_union(set_of(p.inputs), {p.level, p.state});
  const Var w = Var::fresh(Var("w"), taken);
  taken = var_union(taken, {w});
  const Var prev = Var::fresh(Var("prev"), taken);

  auto walk = std::make_shared<DefinedFunction>();
  walk->name = name + "_walk";
  walk->params = p.inputs;
  walk->rec_var = w;
  walk->prev_var = prev;
  walk->base = p.init;
  walk->step = substitute(p.step, {{p.level, bitlen(Term::var(w)) - constant(1)}, {p.state, Term::var(prev)}});
  walk->bound = p.bound;

  std::vector<Term> args{half(exp2(p.length))};
  for (Var x : p.inputs) args.push_back(Term::var(x));
  auto f = std::make_shared<DefinedFunction>();
  f->name = name;
  f->params = p.inputs;
  f->prev_var = prev;
  f->base = substitute(p.project, p.state, Term::call(walk, args));
  f->step = constant(0);
  f->bound = p.out_bound;
  return {walk, f};
}

void require_well_formed(const PLS2Program& p) {
  if (p.k < 2) throw InvalidProgram("k must be at least 2");
  if (!p.G.valid() || !p.A.valid() || !p.bound.valid() || !p.length.valid() || !p.out_bound.valid())
    throw InvalidProgram("incomplete program");
  if (!in_class(p.G, ClassTag::QF())) throw InvalidProgram("the game formula must be quantifier-free");
  if (!in_class(p.A, ClassTag::QF())) throw InvalidProgram("the answer formula must be quantifier-free");
  games::require_well_formed(p.game());
  games::require_well_formed(p.answer_game());
  const VarSet xs = set_of(p.inputs);
  require_scope(p.G.free_vars(), var_union(xs, set_of({p.level, p.first, p.second})), "G");
  require_scope(p.A.free_vars(), var_union(xs, set_of({p.answer, p.challenge})), "A");
  for (auto [t, what] : {std::pair{&p.bound, "bound"}, {&p.length, "length"}, {&p.out_bound, "output bound"}})
    require_scope(t->free_vars(), xs, what);
  for (auto [r, what] : {std::pair{&p.init, "init"}, {&p.step, "step"}, {&p.final, "final"}}) {
    if (r->f.empty() || r->w.size() != r->f.size())
      throw InvalidProgram(std::string(what) + " needs one answer variable per proposal");
    VarSet own = var_union(xs, {r->y});
    if (r == &p.step) own = var_union(own, {p.level});
    for (std::size_t i = 0; i < r->f.size(); ++i) {
      require_scope(r->f[i].free_vars(), own, what);
      own = var_union(own, {r->w[i]});
    }
    require_scope(r->g.free_vars(), own, what);
  }
}

namespace {

struct Stages {
  games::Game trivial, first, next, here, last, answer;
};

Stages stages_of(const PLS2Program& p) {
  Stages s;
  const games::Game g = p.game();
  s.trivial = {Formula::top(), p.bound, {p.first, p.second}};
  s.first = {substitute(p.G, p.level, constant(0)), p.bound, g.moves};
  s.next = {substitute(p.G, p.level, succ(Term::var(p.level))), p.bound, g.moves};
  s.here = g;
  s.last = {substitute(p.G, p.level, p.length), p.bound, g.moves};
  s.answer = p.answer_game();
  return s;
}

}  // namespace

FlowVerdict validate_pls2(const PLS2Program& p, const Grid& grid) {
  require_well_formed(p);
  const Stages st = stages_of(p);
  FlowVerdict total;
  auto run = [&](const std::string& name, const games::Reduction2& r, const games::Game& target,
                 const games::Game& source) {
    FlowVerdict v = games::check_reduction2(r, target, source, grid);
    total.points += v.points;
    total.exact = total.exact && v.exact;
    if (!v.valid) {
      Counterexample c = *v.counterexample;
      c.condition = name + ": " + c.condition;
      total.fail(std::move(c));
    }
    return v.valid;
  };
  run("init", p.init, st.first, st.trivial) && run("step", p.step, st.next, st.here) &&
      run("final", p.final, st.answer, st.last);
  return total;
}

Opponent adversarial_opponent() {
  return [](const games::Game& g, const Env& params, const Natural& proposal) {
    const Natural t = eval_term(g.bound, params);
    Env env = params;
    env.push(g.moves[0], proposal);
    env.push(g.moves[1], 0);
    for (Natural b = 0; b <= t; ++b) {
      env.set(g.moves[1], b);
      if (!eval(g.phi, env, 16).value) return b;
    }
    return Natural(0);
  };
}

PLS2Trace run_pls2(const PLS2Program& p, const std::vector<Natural>& inputs, const Opponent& opponent) {
  require_well_formed(p);
  if (inputs.size() != p.inputs.size()) throw ArityError("program takes " + std::to_string(p.inputs.size()) + " inputs");
  const Opponent answer = opponent ? opponent : adversarial_opponent();
  const Stages st = stages_of(p);
  PLS2Trace trace;
  Env params;
  bind_all(params, p.inputs, inputs);
  const Natural t = eval_term(p.length, params);
  if (t > kMaxStates) throw EvalLimit("length " + t.str() + " is too large to play");

  // One reduction: returns the accepted first move of `target`, or nothing
  // after recording the violation.
  auto play = [&](const std::string& stage, const games::Reduction2& r, const games::Game& target,
                  const Env& game_params, const Natural& move) -> std::optional<Natural> {
    PLS2Round round{stage, {}, {}, std::nullopt};
    const Natural bound = eval_term(target.bound, game_params);
    Env env = game_params;
    env.push(r.y, move);
    for (std::size_t i = 0; i < r.f.size(); ++i) {
      Natural prop = eval_term(r.f[i], env);
      round.proposals.push_back(prop);
      if (prop > bound) {
        trace.rounds.push_back(round);
        trace.violation = "bound";
        trace.detail = stage + ": proposal " + prop.str() + " exceeds " + bound.str();
        return std::nullopt;
      }
      Natural reply = answer(target, game_params, prop);
      round.answers.push_back(reply);
      env.push(r.w[i], reply);
      Env at = game_params;
      at.push(target.moves[0], prop);
      at.push(target.moves[1], reply);
      if (eval(target.phi, at, 16).value) {
        round.accepted = prop;
        trace.rounds.push_back(round);
        return prop;
      }
    }
    const Natural g = eval_term(r.g, env);
    trace.rounds.push_back(round);
    trace.violation = "refuted";
    trace.detail = stage + ": every proposal was refuted; the reduction answers " + g.str() +
                   " against the previous move " + move.str();
    return std::nullopt;
  };

  std::optional<Natural> move = play("init", p.init, st.first, params, 0);
  Env with_u = params;
  with_u.push(p.level, 0);
  for (Natural u = 0; move && u < t; ++u) {
    with_u.set(p.level, u);
    move = play("step " + u.str(), p.step, st.next, with_u, *move);
  }
  if (move) move = play("final", p.final, st.answer, params, *move);
  if (!move) return trace;
  trace.success = true;
  trace.output = *move;
  return trace;
}

}  // namespace ordflow::search
