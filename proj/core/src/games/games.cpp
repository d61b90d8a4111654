#include "ordflow/games/games.hpp"

#include "ordflow/error.hpp"
#include "ordflow/logic/analysis.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"

#include <algorithm>

namespace ordflow::games {

using namespace logic;

namespace {

constexpr double kMaxPlays = 5e7;

Formula bare(const Formula& phi, const Game& g, const std::vector<Term>& moves) {
  Substitution sub;
  for (std::size_t i = 0; i < g.moves.size() && i < moves.size(); ++i) sub[g.moves[i]] = moves[i];
  return substitute(phi, sub);
}

Formula play(const Game& g, const Term& first, const Term& second) { return bare(g.phi, g, {first, second}); }

bool holds(const Formula& f, const Env& env, bool& exact) {
  Verdict v = eval(f, env, 16);
  exact = exact && v.exact;
  return v.value;
}

VarSet vars_of(const std::vector<Formula>& fs, const std::vector<Term>& ts) {
  VarSet out;
  for (const Formula& f : fs) out = var_union(out, f.free_vars());
  for (const Term& t : ts) out = var_union(out, t.free_vars());
  return out;
}

void guard_plays(const Natural& t, const Natural& s, std::size_t answers) {
  double plays = static_cast<double>(t + 1);
  for (std::size_t i = 0; i < answers; ++i) plays *= static_cast<double>(s + 1);
  if (plays > kMaxPlays) throw EvalLimit("too many plays to enumerate");
}

// Visits every vector in [0, hi]^n (last entry fastest).
template <class Visit>
bool for_each_tuple(std::size_t n, const Natural& hi, Visit visit) {
  std::vector<Natural> w(n, 0);
  while (true) {
    if (!visit(w)) return false;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (w[i] < hi) {
        ++w[i];
        break;
      }
      w[i] = 0;
      if (i == 0) return true;
    }
    if (n == 0) return true;
  }
}

}  // namespace

VarSet Game::params() const {
  VarSet own;
  for (Var v : moves) own = var_union(own, {v});
  return var_minus(var_union(phi.free_vars(), bound.free_vars()), own);
}

void require_well_formed(const Game& g) {
  if (g.moves.empty() || g.moves.size() > 2) throw InvalidProgram("a game has one or two turns");
  if (g.moves.size() == 2 && g.moves[0] == g.moves[1]) throw InvalidProgram("the two moves must be distinct variables");
  if (g.bound.mentions(g.moves[0]) || (g.moves.size() == 2 && g.bound.mentions(g.moves[1])))
    throw InvalidProgram("the move bound depends on a move");
}

bool has_winning_strategy(const Game& g, const Env& params) {
  require_well_formed(g);
  const Natural t = eval_term(g.bound, params);
  guard_plays(t, t, g.turns() - 1);
  Env env = params;
  env.push(g.moves[0], 0);
  if (g.turns() == 2) env.push(g.moves[1], 0);
  for (Natural a = 0; a <= t; ++a) {
    env.set(g.moves[0], a);
    bool wins = true;
    if (g.turns() == 1) {
      wins = eval(g.phi, env, 16).value;
    } else {
      for (Natural b = 0; b <= t && wins; ++b) {
        env.set(g.moves[1], b);
        wins = eval(g.phi, env, 16).value;
      }
    }
    if (wins) return true;
  }
  return false;
}

FlowVerdict check_reduction1(const Reduction1& r, const Game& target, const Game& source, const Grid& grid) {
  require_well_formed(target);
  require_well_formed(source);
  Formula win = implies(bare(source.phi, source, {Term::var(r.y)}), bare(target.phi, target, {r.f}));
  std::vector<Var> params =
      canonical_order(var_minus(vars_of({win}, {r.f, source.bound, target.bound}), {r.y}));
  std::vector<Var> shown = params;
  shown.push_back(r.y);
  FlowVerdict verdict;
  bool exact = true;
  for_each_point(grid, params, Env{}, [&](const Env& base) {
    ++verdict.points;
    const Natural t = eval_term(source.bound, base), s = eval_term(target.bound, base);
    guard_plays(t, s, 0);
    Env env = base;
    env.push(r.y, 0);
    for (Natural a = 0; a <= t; ++a) {
      env.set(r.y, a);
      Natural fv = eval_term(r.f, env);
      if (fv > s) {
        verdict.fail({"bound", snapshot(env, shown), std::nullopt, std::nullopt,
                      "f = " + fv.str() + " exceeds " + s.str()});
        return false;
      }
      if (!holds(win, env, exact)) {
        verdict.fail({"win", snapshot(env, shown), std::nullopt, std::nullopt, "source play wins, target play loses"});
        return false;
      }
    }
    return true;
  });
  verdict.exact = exact;
  return verdict;
}

namespace {

struct Reduction2Parts {
  Formula source_play;                // G(y, g)
  std::vector<Formula> target_plays;  // H(f_i, w_i)
};

Reduction2Parts parts_of(const Reduction2& r, const Game& target, const Game& source) {
  if (r.f.empty()) throw InvalidProgram("a reduction needs at least one proposal");
  if (r.w.size() != r.f.size()) throw InvalidProgram("one answer variable per proposal is required");
  Reduction2Parts p;
  p.source_play = play(source, Term::var(r.y), r.g);
  for (std::size_t i = 0; i < r.f.size(); ++i) p.target_plays.push_back(play(target, r.f[i], Term::var(r.w[i])));
  return p;
}

}  // namespace

FlowVerdict check_reduction2(const Reduction2& r, const Game& target, const Game& source, const Grid& grid) {
  require_well_formed(target);
  require_well_formed(source);
  if (target.turns() != 2 || source.turns() != 2) throw InvalidProgram("two-turn reductions need two-turn games");
  Reduction2Parts p = parts_of(r, target, source);
  Formula win = implies(p.source_play, Formula::disj(p.target_plays));
  VarSet moves{r.y};
  for (Var w : r.w) moves = var_union(moves, {w});
  std::vector<Term> terms = r.f;
  terms.push_back(r.g);
  terms.push_back(source.bound);
  terms.push_back(target.bound);
  std::vector<Var> params = canonical_order(var_minus(vars_of({win}, terms), moves));
  std::vector<Var> shown = params;
  shown.push_back(r.y);
  shown.insert(shown.end(), r.w.begin(), r.w.end());

  FlowVerdict verdict;
  bool exact = true;
  for_each_point(grid, params, Env{}, [&](const Env& base) {
    ++verdict.points;
    const Natural t = eval_term(source.bound, base), s = eval_term(target.bound, base);
    guard_plays(t, s, r.w.size());
    Env env = base;
    env.push(r.y, 0);
    for (Var w : r.w) env.push(w, 0);
    for (Natural a = 0; a <= t; ++a) {
      env.set(r.y, a);
      bool ok = for_each_tuple(r.w.size(), s, [&](const std::vector<Natural>& ws) {
        for (std::size_t i = 0; i < ws.size(); ++i) env.set(r.w[i], ws[i]);
        for (std::size_t i = 0; i < r.f.size(); ++i) {
          Natural fv = eval_term(r.f[i], env);
          if (fv > s) {
            verdict.fail({"f" + std::to_string(i) + " bound", snapshot(env, shown), std::nullopt, std::nullopt,
                          "f" + std::to_string(i) + " = " + fv.str() + " exceeds " + s.str()});
            return false;
          }
        }
        Natural gv = eval_term(r.g, env);
        if (gv > t) {
          verdict.fail({"g bound", snapshot(env, shown), std::nullopt, std::nullopt,
                        "g = " + gv.str() + " exceeds " + t.str()});
          return false;
        }
        if (!holds(win, env, exact)) {
          verdict.fail({"win", snapshot(env, shown), std::nullopt, std::nullopt,
                        "source play wins, every target play loses"});
          return false;
        }
        return true;
      });
      if (!ok) return false;
    }
    return true;
  });
  verdict.exact = exact;
  return verdict;
}

FlowVerdict check_deterministic2(Var y, Var w, const Term& f, const Term& g, const Game& target, const Game& source,
                                 const Grid& grid) {
  require_well_formed(target);
  require_well_formed(source);
  Formula lhs = play(source, Term::var(y), g);
  Formula rhs = play(target, f, Term::var(w));
  std::vector<Var> params = canonical_order(
      var_minus(vars_of({lhs, rhs}, {f, g, source.bound, target.bound}), {y, w}));
  std::vector<Var> shown = params;
  shown.push_back(y);
  shown.push_back(w);
  FlowVerdict verdict;
  bool exact = true;
  for_each_point(grid, params, Env{}, [&](const Env& base) {
    ++verdict.points;
    const Natural t = eval_term(source.bound, base), s = eval_term(target.bound, base);
    guard_plays(t, s, 1);
    Env env = base;
    env.push(y, 0);
    env.push(w, 0);
    // The three conditions are checked one after another over all plays.
    for (Natural a = 0; a <= t; ++a) {
      env.set(y, a);
      Natural fv = eval_term(f, env);
      if (fv > s) {
        verdict.fail({"f0 bound", snapshot(env, shown), std::nullopt, std::nullopt, "f = " + fv.str()});
        return false;
      }
    }
    for (Natural a = 0; a <= t; ++a)
      for (Natural b = 0; b <= s; ++b) {
        env.set(y, a);
        env.set(w, b);
        Natural gv = eval_term(g, env);
        if (gv > t) {
          verdict.fail({"g bound", snapshot(env, shown), std::nullopt, std::nullopt, "g = " + gv.str()});
          return false;
        }
      }
    for (Natural a = 0; a <= t; ++a)
      for (Natural b = 0; b <= s; ++b) {
        env.set(y, a);
        env.set(w, b);
        if (holds(lhs, env, exact) && !holds(rhs, env, exact)) {
          verdict.fail({"win", snapshot(env, shown), std::nullopt, std::nullopt, "source play wins, target loses"});
          return false;
        }
      }
    return true;
  });
  verdict.exact = exact;
  return verdict;
}

EmbeddedReduction embed_reduction1(const Reduction1& r, const Game& target, const Game& source) {
  require_well_formed(target);
  require_well_formed(source);
  VarSet taken = vars_of({target.phi, source.phi}, {r.f, target.bound, source.bound});
  taken = var_union(taken, {r.y});
  for (Var v : target.moves) taken = var_union(taken, {v});
  for (Var v : source.moves) taken = var_union(taken, {v});
  Var w0 = Var::fresh(Var("w"), taken);
  taken = var_union(taken, {w0});
  Var second = Var::fresh(Var("z"), taken);
  EmbeddedReduction out{{r.y, {w0}, {r.f}, constant(0)}, target, source};
  out.target.moves = {target.moves[0], second};
  out.source.moves = {source.moves[0], second};
  return out;
}

Term clamp(const Term& g, const Term& s) { return cond(g - s, g, constant(0)); }

Reduction2 build_reduction2_from_herbrand(const std::vector<Term>& g_terms, const std::vector<Term>& h_terms, Var y,
                                          const std::vector<Var>& w, const Game& source, const Game& target,
                                          const Grid& grid) {
  require_well_formed(target);
  require_well_formed(source);
  if (g_terms.empty() || g_terms.size() != h_terms.size() || w.size() != g_terms.size())
    throw InvalidProgram("Herbrand data needs matching g, h and answer lists");
  const Term yt = Term::var(y);
  auto g_tilde = [&](const Term& z) {
    return Formula::le(yt, source.bound) && (Formula::nle(z, source.bound) || play(source, yt, z));
  };
  auto h_tilde = [&](const Term& v, Var wi) {
    const Term wt = Term::var(wi);
    return Formula::le(v, target.bound) && (Formula::nle(wt, target.bound) || play(target, v, wt));
  };
  std::vector<Formula> disjuncts;
  for (std::size_t i = 0; i < g_terms.size(); ++i)
    disjuncts.push_back(implies(g_tilde(g_terms[i]), h_tilde(h_terms[i], w[i])));
  Formula herbrand = Formula::disj(disjuncts);

  // Plays outside the bounds satisfy the disjunction trivially or are never
  // used, so y <= t and w <= s suffice.
  VarSet moves{y};
  for (Var v : w) moves = var_union(moves, {v});
  std::vector<Var> params =
      canonical_order(var_minus(vars_of({herbrand}, {source.bound, target.bound}), moves));
  std::vector<Var> shown = params;
  shown.push_back(y);
  shown.insert(shown.end(), w.begin(), w.end());
  std::optional<Counterexample> cx;
  bool exact = true;
  for_each_point(grid, params, Env{}, [&](const Env& base) {
    const Natural t = eval_term(source.bound, base), s = eval_term(target.bound, base);
    guard_plays(t, s, w.size());
    Env env = base;
    env.push(y, 0);
    for (Var v : w) env.push(v, 0);
    for (Natural a = 0; a <= t; ++a) {
      env.set(y, a);
      bool ok = for_each_tuple(w.size(), s, [&](const std::vector<Natural>& ws) {
        for (std::size_t i = 0; i < ws.size(); ++i) env.set(w[i], ws[i]);
        if (holds(herbrand, env, exact)) return true;
        cx = Counterexample{"herbrand", snapshot(env, shown), std::nullopt, std::nullopt, "every disjunct fails"};
        return false;
      });
      if (!ok) return false;
    }
    return true;
  });
  if (cx) throw HerbrandDisjunctionFails("Herbrand disjunction fails", *cx);

  Term g_prime = constant(0);
  for (std::size_t i = g_terms.size(); i-- > 0;)
    g_prime = if_then_else(negate(g_tilde(g_terms[i])), g_terms[i], g_prime);
  Reduction2 out;
  out.y = y;
  out.w = w;
  for (const Term& h : h_terms) out.f.push_back(clamp(h, target.bound));
  out.g = clamp(g_prime, source.bound);
  return out;
}

SeparatorReport separator_demo(const Formula& b, const Formula& c, const Term& s, const Term& f, const Natural& from,
                               const Natural& to) {
  const Var x("x"), y("y"), z("z"), w0("w0"), w1("w1");
  SeparatorReport report;
  report.from = from;
  report.to = to;
  Env env{{x, 0}, {y, 0}, {z, 0}, {w0, 0}, {w1, 1}};
  for (Natural xv = from; xv <= to; ++xv) {
    env.set(x, xv);
    const Natural sv = eval_term(s, env);
    if (sv < 1) throw PreconditionFailed("the witness bound must be at least 1; it is 0 at x = " + xv.str());
    auto some = [&](Var v, const Formula& body) {
      for (Natural a = 0; a <= sv; ++a) {
        env.set(v, a);
        if (eval(body, env, 16).value) return true;
      }
      return false;
    };
    const bool in_u = some(y, b), in_v = some(z, c);
    if (in_u && in_v)
      throw NotDisjoint("the two sets meet", {"disjoint", {{"x", xv}}, std::nullopt, std::nullopt, "x lies in both sets"});
    const bool in_s = eval_term(f, env) != 0;
    if (report.separates && ((in_u && !in_s) || (in_v && in_s))) {
      report.separates = false;
      report.witness = xv;
      report.detail = in_u ? "x is in the first set but f(x, 0, 1) = 0" : "x is in the second set but f(x, 0, 1) != 0";
    }
    // A(x, w, y, z) = (w = 0 -> not B(x, y)) and (w != 0 -> not C(x, z)) at w = f(x, 0, 1).
    if (report.extraction_holds) {
      for (Natural a = 0; a <= sv && report.extraction_holds; ++a) {
        env.set(y, a);
        env.set(z, a);
        if (in_s ? eval(c, env, 16).value : eval(b, env, 16).value) report.extraction_holds = false;
      }
    }
  }
  return report;
}

}  // namespace ordflow::games
