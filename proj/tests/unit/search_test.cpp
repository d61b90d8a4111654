#include "ordflow/error.hpp"
#include "ordflow/flow/ordinal_flow.hpp"
#include "ordflow/games/games.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"
#include "ordflow/search/ls.hpp"
#include "ordflow/search/pls.hpp"

#include <gtest/gtest.h>

using namespace ordflow;
using namespace ordflow::logic;
using namespace ordflow::search;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }
const Var x("x"), y("y"), z("z"), w0("w0"), gamma_("gamma");

Term code(const Ordinal& a) { return constant(encode(a)); }

LSProgram identity_ls() {
  LSProgram p;
  p.inputs = {x};
  p.outputs = {y};
  p.state = {z};
  p.A = F("y = x");
  p.init = {Term::var(x)};
  p.G = F("z = x");
  p.step = {Term::var(z)};
  p.clock = constant(0);
  p.project = {Term::var(z)};
  p.beta = Ordinal::one();
  return p;
}

// Walks down from n one level at a time.
LSProgram countdown_ls(unsigned n) {
  LSProgram p = identity_ls();
  p.beta = from_nat(n);
  p.clock = omonus(Term::var(gamma_), code(Ordinal::one()));
  return p;
}

// Stage codes of finite ordinals up to 20 stay below 4000.
Grid ls_grid(unsigned max = 20) {
  Grid g = Grid::uniform(max);
  g.domain_bound = max;
  g.code_bound = 4000;
  return g;
}

void expect_valid(const FlowVerdict& v, bool exact = true) {
  EXPECT_TRUE(v.valid) << (v.counterexample ? v.counterexample->describe() : "");
  if (exact) EXPECT_TRUE(v.exact);
}

TEST(LS, IdentityRun) {
  DescentTrace t = run_ls(identity_ls(), {7});
  ASSERT_TRUE(t.success) << t.violation << " " << t.detail;
  EXPECT_EQ(t.output, std::vector<Natural>{7});
  EXPECT_EQ(t.steps.size(), 2u);
}

TEST(LS, NoDescent) {
  LSProgram p = identity_ls();
  p.clock = Term::var(gamma_);
  DescentTrace t = run_ls(p, {7});
  EXPECT_FALSE(t.success);
  EXPECT_EQ(t.violation, "non_descent");
  EXPECT_EQ(t.at, 0u);
}

TEST(LS, CountdownRuns) {
  for (unsigned n = 1; n <= 20; ++n) {
    DescentTrace t = run_ls(countdown_ls(n), {3});
    ASSERT_TRUE(t.success) << n;
    EXPECT_EQ(t.steps.size(), n + 1);
    for (std::size_t i = 1; i < t.steps.size(); ++i) {
      EXPECT_LT(t.steps[i].level, t.steps[i - 1].level);
      EXPECT_EQ(t.steps[i].level, from_nat(n - i));
    }
  }
}

TEST(LS, TransfiniteDescent) {
  // omega + 2 -> omega -> 3 -> 2 -> 1 -> 0
  LSProgram p = identity_ls();
  const Ordinal w = Ordinal::omega();
  p.beta = w + from_nat(2);
  const Term g = Term::var(gamma_), cw = code(w);
  p.clock = cond(olt(g, cw), cond((g - cw) + (cw - g), code(from_nat(3)), cw), omonus(g, code(Ordinal::one())));
  DescentTrace t = run_ls(p, {2});
  ASSERT_TRUE(t.success) << t.detail;
  std::vector<Ordinal> levels;
  for (const DescentStep& s : t.steps) levels.push_back(s.level);
  EXPECT_EQ(levels, (std::vector<Ordinal>{w + from_nat(2), w, from_nat(3), from_nat(2), Ordinal::one(), Ordinal{}}));
}

TEST(LS, Validate) {
  expect_valid(validate_ls(identity_ls(), ls_grid()));
  expect_valid(validate_ls(countdown_ls(5), ls_grid()));
  // At the default code bound 5 (code 216) is out of reach.
  FlowVerdict v = validate_ls(countdown_ls(5), Grid::uniform(8));
  EXPECT_TRUE(v.valid);
  EXPECT_FALSE(v.exact);
}

TEST(LS, BrokenOutput) {
  LSProgram p = identity_ls();
  p.project = {T("ifz((x - 3) + (3 - x), z + 1, z)")};
  FlowVerdict v = validate_ls(p, ls_grid());
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(ls_condition_index(v.counterexample->condition), 4);
  EXPECT_EQ(v.counterexample->env.front(), (std::pair<std::string, Natural>{"x", 3}));
}

TEST(LS, FaultsNameTheirCondition) {
  std::vector<std::pair<LSProgram, int>> faults;
  LSProgram p = countdown_ls(5);
  p.init = {T("x + 1")};
  faults.emplace_back(p, 1);
  p = countdown_ls(5);
  p.clock = Term::var(gamma_);
  faults.emplace_back(p, 2);
  p = countdown_ls(5);
  p.step = {T("z + 1")};
  faults.emplace_back(p, 3);
  p = countdown_ls(5);
  p.project = {T("z + 1")};
  faults.emplace_back(p, 4);
  for (const auto& [prog, index] : faults) {
    FlowVerdict v = validate_ls(prog, ls_grid());
    ASSERT_FALSE(v.valid) << index;
    EXPECT_EQ(ls_condition_index(v.counterexample->condition), index);
    // The executor trips over the same fault.
    DescentTrace t = run_ls(prog, {4});
    EXPECT_FALSE(t.success) << index;
  }
}

TEST(LS, IllFormed) {
  LSProgram p = identity_ls();
  p.init = {};
  EXPECT_THROW(validate_ls(p, ls_grid()), InvalidProgram);
  p = identity_ls();
  p.G = F("exists w. z = w");
  EXPECT_THROW(run_ls(p, {1}), InvalidProgram);
  p = identity_ls();
  p.project = {Term::var(gamma_)};
  EXPECT_THROW(ls_to_flow(p), InvalidProgram);
}

TEST(LSFlow, IdentityAndCountdown) {
  for (const LSProgram& p : {identity_ls(), countdown_ls(5)}) {
    flow::OrdinalFlow f = ls_to_flow(p);
    EXPECT_EQ(f.beta, p.beta);
    EXPECT_EQ(f.target, Formula::bottom());
    expect_valid(flow::check_ordinal_flow(f, ls_grid(16)));
  }
}

// Programs for an A with no solution at x = 3. Each breaks one condition and
// its flow fails at the matching place.
TEST(LSFlow, FaultsShowInTheFlow) {
  LSProgram base = countdown_ls(4);
  base.A = F("y = x and not x = 3");
  const std::string beta = std::to_string(encode(base.beta).convert_to<unsigned>());

  LSProgram init = base;  // G never holds at x = 3
  init.G = F("z = x and not x = 3");
  LSProgram step = base;  // G holds at beta only
  step.init = {T("ifz((x - 3) + (3 - x), 0, x)")};
  step.G = parse_formula("(z = x and not x = 3) or (x = 3 and z = 0 and gamma = " + beta + ")");
  LSProgram output = base;  // every condition but the last holds
  const std::vector<std::tuple<LSProgram, std::string, std::string>> cases{
      {init, "init", "target"}, {step, "step", "step"}, {output, "output", "source"}};
  for (const auto& [p, bullet, flow_condition] : cases) {
    FlowVerdict v = validate_ls(p, ls_grid(8));
    ASSERT_FALSE(v.valid);
    EXPECT_EQ(v.counterexample->condition, bullet);
    FlowVerdict fv = flow::check_ordinal_flow(ls_to_flow(p), ls_grid(8));
    ASSERT_FALSE(fv.valid) << bullet;
    EXPECT_EQ(fv.counterexample->condition, flow_condition);
  }
}

TEST(LSFlow, RoundTrip) {
  for (const LSProgram& p : {identity_ls(), countdown_ls(5)}) {
    const Grid grid = ls_grid();
    FlowToLS back = flow_to_ls(ls_to_flow(p), grid);
    expect_valid(validate_ls(back.program, grid));
    for (unsigned a = 0; a <= 20; ++a) {
      DescentTrace t = run_ls(back.program, {a});
      ASSERT_TRUE(t.success) << a << " " << t.detail;
      EXPECT_EQ(t.output, std::vector<Natural>{a});
    }
  }
}

TEST(LSFlow, GivenWitnesses) {
  flow::OrdinalFlow f = ls_to_flow(countdown_ls(3));
  FlowToLS found = flow_to_ls(f, ls_grid(10));
  FlowToLS again = flow_to_ls(f, ls_grid(10), found.witnesses);
  expect_valid(validate_ls(again.program, ls_grid(10)));
  LSWitnesses bad = found.witnesses;
  bad.W = std::vector<Term>(bad.W.size(), constant(100));
  EXPECT_THROW(flow_to_ls(f, ls_grid(10), bad), WitnessSearchFailed);
}

TEST(LSFlow, ShapePreconditions) {
  flow::OrdinalFlow f = ls_to_flow(identity_ls());
  f.target = F("x = x");
  EXPECT_THROW(flow_to_ls(f, ls_grid(8)), ShapeViolation);
  f = ls_to_flow(identity_ls());
  f.source = F("exists y. y = x");
  EXPECT_THROW(flow_to_ls(f, ls_grid(8)), ShapeViolation);
}

TEST(LSFlow, NoWitness) {
  // A asks for y = x + 1 but the only candidates are x, the state and 0, 1.
  LSProgram p = identity_ls();
  p.A = F("y = x * x + 2");
  flow::OrdinalFlow f = ls_to_flow(p);
  try {
    flow_to_ls(f, ls_grid(6));
    FAIL() << "expected WitnessSearchFailed";
  } catch (const WitnessSearchFailed& e) {
    EXPECT_EQ(e.counterexample().condition, "output");
  }
}

// --- PLS(k, 1)

PLS1Program constant_pls1() {
  PLS1Program p;
  p.inputs = {x};
  p.A = F("y = x + 1");
  p.bound = T("x + 1");
  p.init = T("x + 1");
  p.G = F("z = x + 1");
  p.step = Term::var(z);
  p.project = Term::var(z);
  p.length = T("3");
  p.out_bound = T("x + 1");
  return p;
}

// z -> min(2z + 1, x) for |x| rounds.
PLS1Program doubling_walk() {
  PLS1Program p;
  p.inputs = {x};
  p.A = F("y <= x");
  p.bound = T("x");
  p.init = T("0");
  p.G = F("z <= x");
  p.step = T("ifz((2 * z + 1) - x, 2 * z + 1, x)");
  p.project = Term::var(z);
  p.length = T("len(x)");
  p.out_bound = T("x");
  return p;
}

// Counts the rounds: y = |x|. The state is min(u, |x|) at every level.
PLS1Program counter() {
  PLS1Program p;
  p.inputs = {x};
  p.A = F("y = len(x)");
  p.bound = T("len(x)");
  p.init = T("0");
  p.G = F("(u <= len(x) and z = u) or (len(x) <= u and z = len(x))");
  p.step = T("ifz((z + 1) - len(x), z + 1, z)");
  p.project = Term::var(z);
  p.length = T("len(x)");
  p.out_bound = T("len(x)");
  return p;
}

Natural doubling_oracle(unsigned a) {
  unsigned len = 0;
  for (unsigned v = a; v; v >>= 1) ++len;
  unsigned long z = 0;
  for (unsigned i = 0; i < len; ++i) z = std::min<unsigned long>(2 * z + 1, a);
  return z;
}

TEST(PLS1, Runs) {
  PLS1Trace t = run_pls1(constant_pls1(), {4});
  ASSERT_TRUE(t.success) << t.detail;
  EXPECT_EQ(t.output, 5);
  EXPECT_EQ(t.states.size(), 4u);
  for (unsigned a = 0; a <= 64; ++a) {
    t = run_pls1(doubling_walk(), {a});
    ASSERT_TRUE(t.success) << a;
    EXPECT_EQ(t.output, doubling_oracle(a)) << a;
  }
  t = run_pls1(counter(), {37});
  ASSERT_TRUE(t.success);
  EXPECT_EQ(t.output, 6);
}

TEST(PLS1, BoundViolation) {
  PLS1Program p = doubling_walk();
  p.step = T("2 * z + 1");
  PLS1Trace t = run_pls1(p, {2});
  EXPECT_FALSE(t.success);
  EXPECT_EQ(t.violation, "bound");
  EXPECT_EQ(t.at, 1);
  FlowVerdict v = validate_pls1(p, Grid::uniform(8));
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.counterexample->condition, "bound");
}

TEST(PLS1, Validate) {
  for (const PLS1Program& p : {constant_pls1(), doubling_walk(), counter()}) expect_valid(validate_pls1(p, Grid::uniform(16)));
}

TEST(PLS1, FaultsNameTheirCondition) {
  std::vector<std::pair<PLS1Program, int>> faults;
  PLS1Program p = counter();
  p.init = T("len(x) + 1");
  faults.emplace_back(p, 1);
  p = counter();
  p.init = T("ifz(x, 0, 1)");
  faults.emplace_back(p, 2);
  p = counter();
  p.step = T("z + 2");
  faults.emplace_back(p, 3);
  p = counter();
  p.step = T("half(z)");
  faults.emplace_back(p, 4);
  p = counter();
  p.project = T("z + 1");
  faults.emplace_back(p, 5);
  p = counter();
  p.project = T("half(z)");
  faults.emplace_back(p, 6);
  for (const auto& [prog, index] : faults) {
    FlowVerdict v = validate_pls1(prog, Grid::uniform(8));
    ASSERT_FALSE(v.valid) << index;
    EXPECT_EQ(pls1_condition_index(v.counterexample->condition), index) << v.counterexample->describe();
  }
}

TEST(PLS1, CompileAgrees) {
  for (const PLS1Program& p : {constant_pls1(), doubling_walk(), counter()}) {
    CompiledPLS1 c = compile_pls1(p);
    for (unsigned a = 0; a <= 256; ++a) {
      PLS1Trace t = run_pls1(p, {a});
      ASSERT_TRUE(t.success);
      EXPECT_EQ(apply_function(*c.f, {a}), t.output) << a;
    }
  }
  // For the constant program f is project(init).
  EXPECT_EQ(apply_function(*compile_pls1(constant_pls1()).f, {9}), 10);
}

TEST(PLS1, CompileNeedsPolynomialLength) {
  PLS1Program p = counter();
  p.length = T("x");
  EXPECT_THROW(compile_pls1(p), NotPolynomialLength);
}

// --- PLS(k, 2)

games::Reduction2 identity_reduction() { return {y, {w0}, {Term::var(y)}, Term::var(w0)}; }

PLS2Program trivial_pls2() {
  PLS2Program p;
  p.inputs = {x};
  p.G = F("0 = 0");
  p.bound = T("x");
  p.init = identity_reduction();
  p.step = identity_reduction();
  p.final = identity_reduction();
  p.length = T("len(x)");
  p.A = F("0 = 0");
  p.out_bound = T("x");
  return p;
}

// G(u): every w <= s is at most v * (u + 1); s = 2x. The step comes from the
// Herbrand builder, the answer game asks for y with z <= 2y.
PLS2Program one_step_pls2(const Grid& grid) {
  PLS2Program p;
  p.inputs = {x};
  p.G = F("w <= v * (u + 1)");
  p.bound = T("2 * x");
  p.init = {y, {w0}, {games::clamp(T("2 * x"), p.bound)}, constant(0)};
  games::Game here = p.game();
  games::Game next{substitute(p.G, p.level, T("u + 1")), p.bound, here.moves};
  p.step = games::build_reduction2_from_herbrand({T("2 * x")}, {Term::var(y)}, y, {w0}, here, next, grid);
  p.final = identity_reduction();
  p.length = T("1");
  p.A = F("z <= 2 * y");
  p.out_bound = T("2 * x");
  return p;
}

TEST(PLS2, Trivial) {
  expect_valid(validate_pls2(trivial_pls2(), Grid::uniform(6)));
  PLS2Trace t = run_pls2(trivial_pls2(), {5});
  ASSERT_TRUE(t.success) << t.detail;
  EXPECT_EQ(t.rounds.size(), 2u + 3u);  // init, three steps, final
}

TEST(PLS2, OneStepFromHerbrand) {
  const Grid grid = Grid::uniform(8);
  PLS2Program p = one_step_pls2(grid);
  expect_valid(validate_pls2(p, grid));
  for (unsigned a = 0; a <= 8; ++a) {
    PLS2Trace t = run_pls2(p, {a});
    ASSERT_TRUE(t.success) << a << " " << t.detail;
    // y wins the answer game when 2y covers every z <= 2x.
    EXPECT_GE(t.output, a);
  }
}

TEST(PLS2, OutOfBoundProposal) {
  PLS2Program p = one_step_pls2(Grid::uniform(8));
  p.init.f = {T("2 * x + 1")};
  FlowVerdict v = validate_pls2(p, Grid::uniform(8));
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.counterexample->condition, "init: f0 bound");
  PLS2Trace t = run_pls2(p, {2});
  EXPECT_FALSE(t.success);
  EXPECT_EQ(t.violation, "bound");
}

TEST(PLS2, Refuted) {
  // A final reduction that always proposes 0 loses the answer game once x > 0.
  PLS2Program p = one_step_pls2(Grid::uniform(8));
  p.final.f = {constant(0)};
  EXPECT_FALSE(validate_pls2(p, Grid::uniform(8)).valid);
  PLS2Trace t = run_pls2(p, {3});
  EXPECT_FALSE(t.success);
  EXPECT_EQ(t.violation, "refuted");
  EXPECT_EQ(t.rounds.back().stage, "final");
}

}  // namespace
