#include "ordflow/logic/functions.hpp"

#include "ordflow/grid.hpp"
#include "ordflow/logic/eval.hpp"
#include "ordflow/verdict.hpp"

#include <algorithm>

namespace ordflow::logic {

namespace {

void require_vars(const Term& t, const VarSet& allowed, const DefinedFunction& f, const char* part) {
  VarSet extra = var_minus(t.free_vars(), allowed);
  if (!extra.empty())
    throw FreeVariableViolation(f.name + ": " + part + " mentions " + extra.front().name() +
                                " which is not a parameter");
}

}  // namespace

void check_function_bound(const DefinedFunction& f, const Natural& grid_max) {
  VarSet params(f.params.begin(), f.params.end());
  std::sort(params.begin(), params.end());
  VarSet with_rec = params;
  if (f.rec_var) with_rec = var_union(with_rec, {*f.rec_var});
  require_vars(f.base, params, f, "base");
  require_vars(f.bound, with_rec, f, "bound");
  if (f.rec_var) require_vars(f.step, var_union(with_rec, {f.prev_var}), f, "step");

  std::vector<Var> inputs;
  if (f.rec_var) inputs.push_back(*f.rec_var);
  inputs.insert(inputs.end(), f.params.begin(), f.params.end());
  Grid grid = Grid::uniform(grid_max);
  std::optional<Counterexample> failure;
  for_each_point(grid, inputs, Env{}, [&](const Env& env) {
    std::vector<Natural> args;
    for (const Var& v : inputs) args.push_back(env.at(v));
    Natural value = apply_function(f, args);
    Natural limit = eval_term(f.bound, env);
    if (value <= limit) return true;
    failure = Counterexample{"bound", snapshot(env, inputs), std::nullopt, std::nullopt,
                             f.name + " = " + value.str() + " exceeds " + limit.str()};
    return false;
  });
  if (failure) throw BoundViolation("defined function " + f.name + " violates its bound", *failure);
}

FunctionPtr FunctionRegistry::define(DefinedFunction f, const Natural& grid_max) {
  if (functions_.count(f.name)) throw Error("function " + f.name + " is already defined");
  check_function_bound(f, grid_max);
  auto p = std::make_shared<const DefinedFunction>(std::move(f));
  functions_.emplace(p->name, p);
  return p;
}

FunctionPtr FunctionRegistry::find(std::string_view name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : it->second;
}

std::vector<FunctionPtr> FunctionRegistry::all() const {
  std::vector<FunctionPtr> out;
  for (const auto& [_, f] : functions_) out.push_back(f);
  return out;
}

}  // namespace ordflow::logic
