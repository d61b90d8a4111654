#pragma once

#include "ordflow/games/games.hpp"
#include "ordflow/grid.hpp"
#include "ordflow/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ordflow::search {

using logic::Env;
using logic::Formula;
using logic::FunctionPtr;
using logic::Term;
using logic::Var;

// Polynomial local search with one output: z_0 = init(x), z_{u+1} =
// step(x, u, z_u) for u < length(x), every state <= bound(x) and satisfying
// G(x, u, z_u), output project(x, z_length) <= out_bound(x) with A(x, y).
struct PLS1Program {
  std::vector<Var> inputs;
  Var output{"y"};
  Var level{"u"};
  Var state{"z"};
  Formula A;
  Term bound;  // s
  Term init;
  Formula G;
  Term step;
  Term project;
  Term length;     // t
  Term out_bound;  // r
  unsigned k = 1;
};

// Arity, scope and class checks (A in PiHat(k-1), G quantifier-free);
// throws InvalidProgram.
void require_well_formed(const PLS1Program& p);

struct PLS1Trace {
  std::vector<Natural> states;  // z_0, z_1, ...
  bool success = false;
  Natural output = 0;
  // "init-bound", "init", "bound", "invariant", "output-bound" or "output",
  // at the level where it happened.
  std::string violation;
  Natural at = 0;
  std::string detail;
};

PLS1Trace run_pls1(const PLS1Program& p, const std::vector<Natural>& inputs, std::size_t max_steps = 1000000);

// The six conditions, in this order:
//   "init-bound"    init <= s
//   "init"          G(x, 0, init)
//   "bound"         z <= s -> step(x, u, z) <= s
//   "step"          z <= s and G(x, u, z) -> G(x, u + 1, step(x, u, z))
//   "output-bound"  z <= s -> project(x, z) <= r
//   "output"        z <= s and G(x, t, z) -> A(x, project(x, z))
// Inputs range over the grid, u over [0, max(grid range of u, t(x))] and z
// over [0, s(x)].
FlowVerdict validate_pls1(const PLS1Program& p, const Grid& grid);

int pls1_condition_index(const std::string& condition);

// The program as two defined functions: the walk M(w, x) by recursion on
// notation (M(0, x) = init, M(w, x) = step(x, |w| - 1, M(w / 2, x)), bounded by
// s) and f(x) = project(x, M(2^t / 2, x)), bounded by r. Throws
// NotPolynomialLength unless the length is a polynomial in the input lengths.
struct CompiledPLS1 {
  FunctionPtr walk;
  FunctionPtr f;
};
CompiledPLS1 compile_pls1(const PLS1Program& p, const std::string& name = "f");

// A chain of two-turn games G(x, u, v, w) with moves v, w <= s(x): `init`
// reduces G(0) to the trivial game, `step` reduces G(u + 1) to G(u), and
// `final` reduces the answer game (A(x, y, z), r(x)) to G(t).
struct PLS2Program {
  std::vector<Var> inputs;
  Var level{"u"};
  Var first{"v"};
  Var second{"w"};
  Formula G;
  Term bound;  // s
  games::Reduction2 init;
  games::Reduction2 step;
  games::Reduction2 final;
  Term length;  // t
  Var answer{"y"};
  Var challenge{"z"};
  Formula A;
  Term out_bound;  // r
  unsigned k = 2;

  games::Game game() const { return {G, bound, {first, second}}; }
  games::Game answer_game() const { return {A, out_bound, {answer, challenge}}; }
};

void require_well_formed(const PLS2Program& p);

// Checks, in this order: "init" (G(0) against the trivial game), "step" (G(u+1)
// against G(u), u over the grid) and "final" (the answer game against G(t)).
// The counterexample condition is "<reduction>: <reduction condition>".
FlowVerdict validate_pls2(const PLS2Program& p, const Grid& grid);

// Picks the opponent's answer to a proposed first move in a game, given the
// parameters of that game.
using Opponent = std::function<Natural(const games::Game&, const Env&, const Natural& proposal)>;

// Answers with the least second move that beats the proposal, or 0.
Opponent adversarial_opponent();

struct PLS2Round {
  std::string stage;  // "init", "step <u>" or "final"
  std::vector<Natural> proposals;
  std::vector<Natural> answers;
  std::optional<Natural> accepted;  // the proposal that survived, if any
};

struct PLS2Trace {
  std::vector<PLS2Round> rounds;
  bool success = false;
  Natural output = 0;
  std::string violation;  // "bound" or "refuted", at rounds.back()
  std::string detail;
};

// Plays the chain: the current winning first move is fed to the next
// reduction, whose proposals are answered by the opponent until one is not
// refuted (no answer the opponent tried beats it).
PLS2Trace run_pls2(const PLS2Program& p, const std::vector<Natural>& inputs, const Opponent& opponent = {});

}  // namespace ordflow::search
