#include "ordflow/flow/kflow.hpp"
#include "ordflow/games/games.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/logic/syntax.hpp"
#include "ordflow/search/ls.hpp"
#include "ordflow/search/pls.hpp"

#include <benchmark/benchmark.h>

using namespace ordflow;
using namespace ordflow::logic;

namespace {

const Var x("x"), y("y"), z("z"), w0("w0");

void BM_CheckKFlow(benchmark::State& state) {
  const flow::KFlow f = flow::make_kflow(Var("u"), parse_formula("u <= len(x) -> half(x) <= x"), parse_term("len(x)"), 1,
                                         parse_formula("half(x) <= x"), parse_formula("half(x) <= x"));
  const Grid grid = Grid::uniform(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(flow::check_kflow(f, grid));
}

search::PLS1Program doubling_walk() {
  search::PLS1Program p;
  p.inputs = {x};
  p.A = parse_formula("y <= x");
  p.bound = parse_term("x");
  p.init = constant(0);
  p.G = parse_formula("z <= x");
  p.step = parse_term("ifz((2 * z + 1) - x, 2 * z + 1, x)");
  p.project = Term::var(z);
  p.length = parse_term("len(x)");
  p.out_bound = parse_term("x");
  return p;
}

void BM_ValidatePLS1(benchmark::State& state) {
  const search::PLS1Program p = doubling_walk();
  const Grid grid = Grid::uniform(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(search::validate_pls1(p, grid));
}

void BM_CompiledPLS1(benchmark::State& state) {
  const search::CompiledPLS1 c = search::compile_pls1(doubling_walk());
  const Natural input = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_function(*c.f, {input}));
}

void BM_ValidateLS(benchmark::State& state) {
  search::LSProgram p;
  p.inputs = {x};
  p.outputs = {y};
  p.state = {z};
  p.A = parse_formula("y = x");
  p.init = {Term::var(x)};
  p.G = parse_formula("z = x");
  p.step = {Term::var(z)};
  p.clock = omonus(Term::var(Var("gamma")), constant(encode(Ordinal::one())));
  p.project = {Term::var(z)};
  p.beta = from_nat(static_cast<unsigned>(state.range(0)));
  Grid grid = Grid::uniform(16);
  grid.code_bound = 4000;
  for (auto _ : state) benchmark::DoNotOptimize(search::validate_ls(p, grid));
}

void BM_CheckReduction2(benchmark::State& state) {
  const games::Game g{parse_formula("z <= y"), Term::var(x), {y, z}};
  const games::Reduction2 r{y, {w0}, {Term::var(y)}, Term::var(w0)};
  const Grid grid = Grid::uniform(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(games::check_reduction2(r, g, g, grid));
}

}  // namespace

BENCHMARK(BM_CheckKFlow)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_ValidatePLS1)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_CompiledPLS1)->Arg(255)->Arg(65535);
BENCHMARK(BM_ValidateLS)->Arg(2)->Arg(5)->Arg(10);
BENCHMARK(BM_CheckReduction2)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK_MAIN();
