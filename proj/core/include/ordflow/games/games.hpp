#pragma once

#include "ordflow/grid.hpp"
#include "ordflow/logic/formula.hpp"
#include "ordflow/verdict.hpp"

#include <optional>
#include <vector>

namespace ordflow::games {

using logic::Env;
using logic::Formula;
using logic::Term;
using logic::Var;
using logic::VarSet;

// One- or two-turn game: player I picks moves[0] <= bound, player II picks
// moves[1] <= bound, and I wins when phi holds.
struct Game {
  Formula phi;
  Term bound;
  std::vector<Var> moves;

  std::size_t turns() const { return moves.size(); }
  VarSet params() const;
};

// Checks turns in {1, 2} and that the moves are distinct; throws InvalidProgram.
void require_well_formed(const Game& g);

// Brute force over [0, bound] for every move.
bool has_winning_strategy(const Game& g, const Env& params);

// f(params, y) maps a first move y of the source game to one of the target.
struct Reduction1 {
  Var y;
  Term f;
};

// Non-deterministic reduction between two-turn games: f[i](params, y, w_0..w_{i-1})
// proposes a first move of the target game, w_i is the opponent's answer, and
// g(params, y, w_0..w_m) answers in the source game.
struct Reduction2 {
  Var y;
  std::vector<Var> w;
  std::vector<Term> f;
  Term g;

  std::size_t m() const { return f.empty() ? 0 : f.size() - 1; }
};

// Checked conditions: "bound" and "win". Counterexamples carry the params
// plus the move variables.
FlowVerdict check_reduction1(const Reduction1& r, const Game& target, const Game& source, const Grid& grid);

// Checked conditions: "f<i> bound", "g bound", "win".
FlowVerdict check_reduction2(const Reduction2& r, const Game& target, const Game& source, const Grid& grid);

// A deterministic two-turn reduction (f, g), checked directly rather than
// through the m = 0 case of check_reduction2.
FlowVerdict check_deterministic2(Var y, Var w, const Term& f, const Term& g, const Game& target, const Game& source,
                                 const Grid& grid);

// A one-turn reduction as an m = 0 two-turn reduction between the games
// extended with an ignored second move.
struct EmbeddedReduction {
  Reduction2 reduction;
  Game target;
  Game source;
};
EmbeddedReduction embed_reduction1(const Reduction1& r, const Game& target, const Game& source);

// g if g <= s, else 0.
Term clamp(const Term& g, const Term& s);

// From Herbrand terms g_i(params, y, w_0..w_{i-1}) and h_i(same) such that
// for every y and answers w, some i has
//   G~(y, g_i) -> H~(h_i, w_i),
// builds a reduction from `target` (H) to `source` (G). The disjunction is
// checked on the grid first (HerbrandDisjunctionFails).
Reduction2 build_reduction2_from_herbrand(const std::vector<Term>& g_terms, const std::vector<Term>& h_terms, Var y,
                                          const std::vector<Var>& w, const Game& source, const Game& target,
                                          const Grid& grid);

struct SeparatorReport {
  Natural from = 0;
  Natural to = 0;
  bool separates = true;
  std::optional<Natural> witness;  // present iff !separates
  std::string detail;
  // Whether forall y, z <= s. A(x, f(x, 0, 1), y, z) held on the whole range.
  bool extraction_holds = true;
};

// Toy version of the extraction that turns a deterministic reduction into a
// separator. B(x, y), C(x, z) define U = {x | exists y <= s. B} and
// V = {x | exists z <= s. C}; f(x, w0, w1) is the reduction's first move and
// S = {x | f(x, 0, 1) != 0}. Throws NotDisjoint when U and V meet and
// PreconditionFailed when s = 0 somewhere on the range.
SeparatorReport separator_demo(const Formula& b, const Formula& c, const Term& s, const Term& f, const Natural& from,
                               const Natural& to);

}  // namespace ordflow::games
