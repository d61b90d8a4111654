#include "ordflow/grid.hpp"

#include "ordflow/ordinal.hpp"

#include <algorithm>
#include <mutex>

namespace ordflow {

using logic::Env;
using logic::Var;

Natural Grid::range_of(const Var& v) const {
  auto it = ranges.find(v.name());
  return it == ranges.end() ? max : it->second;
}

std::vector<Var> canonical_order(const logic::VarSet& vars) {
  std::vector<Var> out(vars.begin(), vars.end());
  std::sort(out.begin(), out.end(), logic::by_name);
  return out;
}

void Grid::use_codes(const Var& v) { values[v.name()] = valid_codes_upto(code_bound); }

const std::vector<Natural>& valid_codes_upto(const Natural& bound) {
  static std::mutex mu;
  static std::map<Natural, std::vector<Natural>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;
  std::vector<Natural> codes;
  for (Natural c = 0; c <= bound; ++c)
    if (is_valid_code(c)) codes.push_back(c);
  return cache.emplace(bound, std::move(codes)).first->second;
}

namespace {

bool visit_from(const Grid& grid, const std::vector<Var>& vars, std::size_t i, Env& env,
                const std::function<bool(const Env&)>& visit) {
  if (i == vars.size()) return visit(env);
  if (auto it = grid.values.find(vars[i].name()); it != grid.values.end()) {
    env.push(vars[i], 0);
    for (const Natural& n : it->second) {
      env.set(vars[i], n);
      if (!visit_from(grid, vars, i + 1, env, visit)) {
        env.pop();
        return false;
      }
    }
    env.pop();
    return true;
  }
  const Natural limit = grid.range_of(vars[i]);
  env.push(vars[i], 0);
  for (Natural n = 0; n <= limit; ++n) {
    env.set(vars[i], n);
    if (!visit_from(grid, vars, i + 1, env, visit)) {
      env.pop();
      return false;
    }
  }
  env.pop();
  return true;
}

}  // namespace

bool for_each_point(const Grid& grid, const std::vector<Var>& vars, const Env& base,
                    const std::function<bool(const Env&)>& visit) {
  Env env = base;
  return visit_from(grid, vars, 0, env, visit);
}

std::vector<std::pair<std::string, Natural>> snapshot(const Env& env, const std::vector<Var>& vars) {
  std::vector<std::pair<std::string, Natural>> out;
  for (const Var& v : vars)
    if (const Natural* n = env.find(v)) out.emplace_back(v.name(), *n);
  return out;
}

StageList stages_upto(const Ordinal& beta, const Natural& code_bound) {
  StageList out;
  bool have_beta = false;
  for (const Natural& c : valid_codes_upto(code_bound)) {
    Ordinal a = decode(c);
    if (a <= beta) {
      have_beta = have_beta || a == beta;
      out.stages.emplace_back(std::move(a), c);
    }
  }
  if (!have_beta) out.stages.emplace_back(beta, encode(beta));
  std::sort(out.stages.begin(), out.stages.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  out.truncated = !beta.is_finite();
  if (!out.truncated) {
    Natural n = to_nat(beta);
    out.truncated = n > 100000;
    for (Natural m = 1; !out.truncated && m < n; ++m) out.truncated = encode(from_nat(m)) > code_bound;
  }
  return out;
}

}  // namespace ordflow
