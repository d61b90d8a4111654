#include "generators.hpp"

#include <algorithm>
#include <vector>

namespace gen {

using namespace ordflow::logic;

ordflow::Ordinal ordinal(Rng& rng, int depth, int width, unsigned max_coef) {
  using ordflow::CnfTerm;
  using ordflow::Ordinal;
  std::uniform_int_distribution<int> count(0, width);
  std::uniform_int_distribution<unsigned> coef(1, max_coef);
  int n = count(rng);
  if (n == 0) return {};
  std::vector<Ordinal> exps;
  for (int i = 0; i < n; ++i) exps.push_back(depth <= 0 ? Ordinal{} : ordinal(rng, depth - 1, width, max_coef));
  std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<CnfTerm> terms;
  for (auto& e : exps) terms.push_back(CnfTerm{e, coef(rng)});
  return Ordinal::from_terms(std::move(terms));
}

namespace {

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

}  // namespace

Term term(Rng& rng, const std::vector<Var>& vars, int depth) {
  if (depth <= 0 || pick(rng, 3) == 0) {
    if (vars.empty() || pick(rng, 3) == 0) return constant(pick(rng, 4));
    return Term::var(vars[pick(rng, static_cast<int>(vars.size()))]);
  }
  auto sub = [&] { return term(rng, vars, depth - 1); };
  switch (pick(rng, 9)) {
    case 0: return sub() + sub();
    case 1: return sub() * sub();
    case 2: return sub() - sub();
    case 3: return half(sub());
    case 4: return bitlen(sub());
    case 5: return sub() / sub();
    case 6: return succ(sub());
    case 7: return cond(sub(), sub(), sub());
    default: return shr(sub(), sub());
  }
}

Formula qf_formula(Rng& rng, const std::vector<Var>& vars, int depth) {
  if (depth <= 0 || pick(rng, 3) == 0) {
    Term a = term(rng, vars, 2), b = term(rng, vars, 2);
    switch (pick(rng, 6)) {
      case 0: return Formula::eq(a, b);
      case 1: return Formula::neq(a, b);
      case 2: return Formula::le(a, b);
      case 3: return Formula::nle(a, b);
      case 4: return pick(rng, 2) ? Formula::top() : Formula::bottom();
      default: return Formula::le(a, b);
    }
  }
  Formula a = qf_formula(rng, vars, depth - 1), b = qf_formula(rng, vars, depth - 1);
  return pick(rng, 2) ? (a && b) : (a || b);
}

Formula formula(Rng& rng, std::vector<Var> vars, const std::vector<Var>& binders, int depth, bool unbounded) {
  if (depth <= 0 || pick(rng, 4) == 0) return qf_formula(rng, vars, 1);
  const int choice = pick(rng, 3);
  if (choice == 0 || binders.empty()) {
    Formula a = formula(rng, vars, binders, depth - 1, unbounded);
    Formula b = formula(rng, vars, binders, depth - 1, unbounded);
    return pick(rng, 2) ? (a && b) : (a || b);
  }
  Var x = binders[pick(rng, static_cast<int>(binders.size()))];
  Term bound = term(rng, vars, 1);
  vars.push_back(x);
  Formula body = formula(rng, vars, binders, depth - 1, unbounded);
  if (unbounded && pick(rng, 4) == 0) return pick(rng, 2) ? Formula::forall(x, body) : Formula::exists(x, body);
  return pick(rng, 2) ? Formula::forall_le(x, bound, body) : Formula::exists_le(x, bound, body);
}

}  // namespace gen
