#include "generators.hpp"

#include "ordflow/error.hpp"
#include "ordflow/games/games.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"

#include <gtest/gtest.h>

using namespace ordflow;
using namespace ordflow::logic;
using namespace ordflow::games;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }
const Var x("x"), y("y"), z("z"), v("v"), w("w"), w0("w0"), w1("w1");

Game game(const char* phi, const char* bound, std::vector<Var> moves = {y, z}) {
  return {F(phi), T(bound), std::move(moves)};
}

Grid grid_upto(unsigned max) { return Grid::uniform(max); }

// exists a <= t. forall b <= t. win(a, b), by plain loops.
template <class Win>
bool brute_force(unsigned t, Win win) {
  for (unsigned a = 0; a <= t; ++a) {
    bool all = true;
    for (unsigned b = 0; b <= t && all; ++b) all = win(a, b);
    if (all) return true;
  }
  return false;
}

TEST(Games, WinningStrategy) {
  EXPECT_TRUE(has_winning_strategy(game("0 = 0", "5"), {}));
  EXPECT_FALSE(has_winning_strategy(game("y = z", "3"), {}));
  EXPECT_TRUE(has_winning_strategy(game("z <= y", "3"), {}));
  EXPECT_TRUE(has_winning_strategy(game("y = x", "x", {y}), {{x, 4}}));
  EXPECT_FALSE(has_winning_strategy(game("y = x + 1", "x", {y}), {{x, 4}}));
}

TEST(Games, WinningStrategyMatchesBruteForce) {
  const Game g = game("z <= y * x or y + z = 5", "x");
  for (unsigned n = 0; n <= 8; ++n) {
    bool expected = brute_force(n, [&](unsigned a, unsigned b) { return b <= a * n || a + b == 5; });
    EXPECT_EQ(has_winning_strategy(g, {{x, n}}), expected) << n;
  }
}

TEST(Games, WellFormedness) {
  EXPECT_THROW(require_well_formed(game("y = z", "3", {y, y})), InvalidProgram);
  EXPECT_THROW(require_well_formed(game("y = z", "y", {y, z})), InvalidProgram);
  EXPECT_THROW(require_well_formed(game("y = z", "3", {})), InvalidProgram);
}

TEST(Games, Clamp) {
  Env env{{x, 3}, {y, 2}};
  EXPECT_EQ(eval_term(clamp(constant(7), T("3")), env), 0);
  for (unsigned a = 0; a <= 6; ++a)
    for (unsigned b = 0; b <= 6; ++b) {
      Env e{{x, b}, {y, a}};
      Natural c = eval_term(clamp(Term::var(y), Term::var(x)), e);
      EXPECT_LE(c, b);
      if (a <= b) EXPECT_EQ(c, a);
    }
}

TEST(Reduction1, IdentityAndConstant) {
  const Game g = game("y + y = x", "x", {y});
  EXPECT_TRUE(check_reduction1({y, Term::var(y)}, g, g, grid_upto(8)).valid);
  // Into the trivial game any clamped move works.
  const Game top = game("0 = 0", "x", {y});
  EXPECT_TRUE(check_reduction1({y, clamp(constant(0), T("x"))}, top, g, grid_upto(8)).valid);
}

TEST(Reduction1, Counterexamples) {
  const Game g = game("y + y = x", "x", {y});
  const Game h = game("y = x", "x", {y});
  FlowVerdict v = check_reduction1({y, Term::var(y)}, h, g, grid_upto(8));
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.counterexample->condition, "win");
  v = check_reduction1({y, T("x + 1")}, h, g, grid_upto(8));
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.counterexample->condition, "bound");
  // y + y = x wins at x = 0 first, where x + 1 exceeds the bound.
  EXPECT_EQ(v.counterexample->env.front(), (std::pair<std::string, Natural>{"x", 0}));
}

TEST(Reduction2, BoundConditions) {
  const Game g = game("z <= y", "x");
  Reduction2 r{y, {w0}, {T("x + 1")}, constant(0)};
  FlowVerdict verdict = check_reduction2(r, g, g, grid_upto(4));
  ASSERT_FALSE(verdict.valid);
  EXPECT_EQ(verdict.counterexample->condition, "f0 bound");
  r = {y, {w0}, {Term::var(y)}, T("x + 1")};
  verdict = check_reduction2(r, g, g, grid_upto(4));
  ASSERT_FALSE(verdict.valid);
  EXPECT_EQ(verdict.counterexample->condition, "g bound");
}

TEST(Reduction2, IdentityIsValid) {
  const Game g = game("z <= y", "x");
  // Propose the same move; answer the source with the opponent's answer.
  Reduction2 r{y, {w0}, {Term::var(y)}, Term::var(w0)};
  FlowVerdict verdict = check_reduction2(r, g, g, grid_upto(6));
  EXPECT_TRUE(verdict.valid) << verdict.counterexample->describe();
}

TEST(Reduction2, MZeroAgreesWithDeterministic) {
  gen::Rng rng(17);
  const std::vector<Var> moves{x, y, w0};
  int agree_valid = 0;
  for (int i = 0; i < 60; ++i) {
    const Game source{gen::qf_formula(rng, {x, y, z}, 2), T("x"), {y, z}};
    const Game target{gen::qf_formula(rng, {x, y, z}, 2), T("x"), {y, z}};
    Term f = clamp(gen::term(rng, {x, y}, 2), T("x"));
    Term g = clamp(gen::term(rng, moves, 2), T("x"));
    FlowVerdict a = check_reduction2({y, {w0}, {f}, g}, target, source, grid_upto(5));
    FlowVerdict b = check_deterministic2(y, w0, f, g, target, source, grid_upto(5));
    EXPECT_EQ(a.valid, b.valid) << to_text(source.phi) << " / " << to_text(target.phi);
    agree_valid += a.valid;
  }
  EXPECT_GT(agree_valid, 0);
}

TEST(Reduction2, Soundness) {
  gen::Rng rng(5);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const Game source{gen::qf_formula(rng, {x, y, z}, 2), T("x"), {y, z}};
    const Game target{gen::qf_formula(rng, {x, y, z}, 2), T("x"), {y, z}};
    Reduction2 r{y, {w0, w1}, {clamp(gen::term(rng, {x, y}, 2), T("x")), clamp(gen::term(rng, {x, y, w0}, 2), T("x"))},
                 clamp(gen::term(rng, {x, y, w0, w1}, 2), T("x"))};
    FlowVerdict verdict = check_reduction2(r, target, source, grid_upto(4));
    if (!verdict.valid || !verdict.exact) continue;
    for (unsigned n = 0; n <= 4; ++n)
      if (has_winning_strategy(source, {{x, n}})) {
        ++checked;
        EXPECT_TRUE(has_winning_strategy(target, {{x, n}})) << to_text(source.phi) << " -> " << to_text(target.phi);
      }
  }
  EXPECT_GT(checked, 20);
}

TEST(Reduction2, EmbeddingKeepsVerdicts) {
  gen::Rng rng(11);
  int valid = 0;
  for (int i = 0; i < 80; ++i) {
    const Game source{gen::qf_formula(rng, {x, y}, 2), T("x"), {y}};
    const Game target{gen::qf_formula(rng, {x, y}, 2), T("x"), {y}};
    Reduction1 r{y, clamp(gen::term(rng, {x, y}, 2), T("x"))};
    EmbeddedReduction e = embed_reduction1(r, target, source);
    FlowVerdict a = check_reduction1(r, target, source, grid_upto(6));
    FlowVerdict b = check_reduction2(e.reduction, e.target, e.source, grid_upto(6));
    EXPECT_EQ(a.valid, b.valid);
    valid += a.valid;
  }
  EXPECT_GT(valid, 0);
}

TEST(Herbrand, DeterministicInput) {
  const Game g = game("z <= y", "x");
  Reduction2 r = build_reduction2_from_herbrand({Term::var(x)}, {Term::var(y)}, y, {w0}, g, g, grid_upto(6));
  EXPECT_EQ(r.m(), 0u);
  EXPECT_TRUE(check_reduction2(r, g, g, grid_upto(6)).valid);
}

TEST(Herbrand, DoubledGame) {
  // The target doubles the source's bound; a first guess of half the source
  // move needs a second try.
  const Game source = game("z <= y", "x");
  const Game target = game("z <= 2 * y", "2 * x");
  Reduction2 r = build_reduction2_from_herbrand({T("y + 1"), T("y + 1")}, {T("half(y)"), Term::var(y)}, y, {w0, w1},
                                               source, target, grid_upto(8));
  EXPECT_EQ(r.m(), 1u);
  FlowVerdict verdict = check_reduction2(r, target, source, grid_upto(8));
  EXPECT_TRUE(verdict.valid) << verdict.counterexample->describe();
  EXPECT_TRUE(verdict.exact);
  // The first guess alone is not enough.
  EXPECT_THROW(build_reduction2_from_herbrand({T("y + 1")}, {T("half(y)")}, y, {w0}, source, target, grid_upto(8)),
               HerbrandDisjunctionFails);
}

TEST(Herbrand, FailureCarriesPoint) {
  const Game source = game("z <= y", "x");
  const Game target = game("z = y", "x");
  try {
    build_reduction2_from_herbrand({Term::var(y)}, {Term::var(y)}, y, {w0}, source, target, grid_upto(4));
    FAIL() << "expected HerbrandDisjunctionFails";
  } catch (const HerbrandDisjunctionFails& e) {
    const auto& env = e.counterexample().env;
    ASSERT_EQ(env.size(), 3u);
    // x = 0 and y = 0: the only answer w0 = 0 matches, so the first failure is at x = 1.
    EXPECT_EQ(env[0], (std::pair<std::string, Natural>{"x", 1}));
  }
}

TEST(Separator, EvenOdd) {
  SeparatorReport r = separator_demo(F("y = 0 and x = 2 * half(x)"), F("z = 0 and not x = 2 * half(x)"), T("1"),
                                     T("1 - (x - 2 * half(x))"), 0, 512);
  EXPECT_TRUE(r.separates) << r.detail;
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_TRUE(r.extraction_holds);
}

TEST(Separator, Overlap) {
  EXPECT_THROW(separator_demo(F("y = 0"), F("z = 0 and x <= 3"), T("1"), T("1"), 0, 16), NotDisjoint);
}

TEST(Separator, ConstantZeroMissesU) {
  SeparatorReport r = separator_demo(F("y = 0 and x = 2 * half(x)"), F("z = 0 and not x = 2 * half(x)"), T("1"),
                                     T("0"), 0, 64);
  EXPECT_FALSE(r.separates);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, 0);
}

TEST(Separator, BoundPrecondition) {
  EXPECT_THROW(separator_demo(F("y = 0"), F("z = 1"), T("x"), T("1"), 0, 4), PreconditionFailed);
}

}  // namespace
