#include "ordflow/logic/formula.hpp"

#include "ordflow/error.hpp"

namespace ordflow::logic {

class FormulaNode {
 public:
  FKind kind;
  bool negated = false;
  std::vector<Term> terms;  // atom sides, or the quantifier bound
  std::vector<Formula> parts;
  Var variable;
  VarSet free_vars;
  std::size_t size = 1;
};

struct FormulaAccess {
  static Formula make(std::shared_ptr<FormulaNode> n) {
    for (const Term& t : n->terms) {
      n->free_vars = var_union(n->free_vars, t.free_vars());
      n->size += t.size();
    }
    VarSet inner;
    for (const Formula& p : n->parts) {
      inner = var_union(inner, p.free_vars());
      n->size += p.size();
    }
    if (n->variable.valid()) inner = var_minus(inner, {n->variable});
    n->free_vars = var_union(n->free_vars, inner);
    Formula f;
    f.node_ = std::move(n);
    return f;
  }
};

namespace {

Formula atom(FKind k, bool negated, Term a, Term b) {
  if (!a.valid() || !b.valid()) throw ArityError("atom with a missing side");
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->negated = negated;
  n->terms = {std::move(a), std::move(b)};
  return FormulaAccess::make(std::move(n));
}

Formula junction(FKind k, std::vector<Formula> parts) {
  if (parts.empty()) return k == FKind::conj ? Formula::top() : Formula::bottom();
  if (parts.size() == 1) return parts[0];
  for (const Formula& p : parts)
    if (!p.valid()) throw ArityError("junction with a missing part");
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->parts = std::move(parts);
  return FormulaAccess::make(std::move(n));
}

Formula quantifier(FKind k, Var x, std::optional<Term> bound, Formula body) {
  if (!body.valid()) throw ArityError("quantifier without a body");
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->variable = x;
  if (bound) n->terms = {std::move(*bound)};
  n->parts = {std::move(body)};
  return FormulaAccess::make(std::move(n));
}

Formula constant_node(FKind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return FormulaAccess::make(std::move(n));
}

}  // namespace

Formula Formula::top() {
  static const Formula t = constant_node(FKind::top);
  return t;
}
Formula Formula::bottom() {
  static const Formula b = constant_node(FKind::bottom);
  return b;
}
Formula Formula::eq(Term a, Term b) { return atom(FKind::eq, false, std::move(a), std::move(b)); }
Formula Formula::neq(Term a, Term b) { return atom(FKind::eq, true, std::move(a), std::move(b)); }
Formula Formula::le(Term a, Term b) { return atom(FKind::le, false, std::move(a), std::move(b)); }
Formula Formula::nle(Term a, Term b) { return atom(FKind::le, true, std::move(a), std::move(b)); }
Formula Formula::conj(std::vector<Formula> parts) { return junction(FKind::conj, std::move(parts)); }
Formula Formula::disj(std::vector<Formula> parts) { return junction(FKind::disj, std::move(parts)); }
Formula Formula::forall(Var x, Formula body) { return quantifier(FKind::forall, x, std::nullopt, std::move(body)); }
Formula Formula::exists(Var x, Formula body) { return quantifier(FKind::exists, x, std::nullopt, std::move(body)); }
Formula Formula::forall_le(Var x, Term bound, Formula body) {
  return quantifier(FKind::bforall, x, std::move(bound), std::move(body));
}
Formula Formula::exists_le(Var x, Term bound, Formula body) {
  return quantifier(FKind::bexists, x, std::move(bound), std::move(body));
}

FKind Formula::kind() const { return node_->kind; }
bool Formula::negated() const { return node_->negated; }
const Term& Formula::lhs() const { return node_->terms.at(0); }
const Term& Formula::rhs() const { return node_->terms.at(1); }
const std::vector<Formula>& Formula::parts() const { return node_->parts; }
Var Formula::bound_var() const { return node_->variable; }
const Term& Formula::bound() const { return node_->terms.at(0); }
const Formula& Formula::body() const { return node_->parts.at(0); }
const VarSet& Formula::free_vars() const { return node_->free_vars; }
std::size_t Formula::size() const { return node_->size; }
bool Formula::is_quantifier() const {
  switch (kind()) {
    case FKind::forall:
    case FKind::exists:
    case FKind::bforall:
    case FKind::bexists: return true;
    default: return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const FormulaNode& x = *a.node_;
  const FormulaNode& y = *b.node_;
  return x.kind == y.kind && x.negated == y.negated && x.size == y.size && x.variable == y.variable &&
         x.terms == y.terms && x.parts == y.parts;
}

Formula operator&&(Formula a, Formula b) { return Formula::conj({std::move(a), std::move(b)}); }
Formula operator||(Formula a, Formula b) { return Formula::disj({std::move(a), std::move(b)}); }

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case FKind::eq: return f.negated() ? Formula::eq(f.lhs(), f.rhs()) : Formula::neq(f.lhs(), f.rhs());
    case FKind::le: return f.negated() ? Formula::le(f.lhs(), f.rhs()) : Formula::nle(f.lhs(), f.rhs());
    case FKind::top: return Formula::bottom();
    case FKind::bottom: return Formula::top();
    case FKind::conj:
    case FKind::disj: {
      std::vector<Formula> parts;
      for (const Formula& p : f.parts()) parts.push_back(negate(p));
      return f.kind() == FKind::conj ? Formula::disj(std::move(parts)) : Formula::conj(std::move(parts));
    }
    case FKind::forall: return Formula::exists(f.bound_var(), negate(f.body()));
    case FKind::exists: return Formula::forall(f.bound_var(), negate(f.body()));
    case FKind::bforall: return Formula::exists_le(f.bound_var(), f.bound(), negate(f.body()));
    case FKind::bexists: return Formula::forall_le(f.bound_var(), f.bound(), negate(f.body()));
  }
  return f;
}

Formula implies(const Formula& a, const Formula& b) { return negate(a) || b; }

Formula substitute(const Formula& f, const Substitution& s) {
  Substitution live;
  for (const auto& [v, t] : s)
    if (f.mentions(v)) live.emplace(v, t);
  if (live.empty()) return f;

  switch (f.kind()) {
    case FKind::eq:
    case FKind::le: {
      Term a = substitute(f.lhs(), live), b = substitute(f.rhs(), live);
      if (f.kind() == FKind::eq) return f.negated() ? Formula::neq(a, b) : Formula::eq(a, b);
      return f.negated() ? Formula::nle(a, b) : Formula::le(a, b);
    }
    case FKind::top:
    case FKind::bottom: return f;
    case FKind::conj:
    case FKind::disj: {
      std::vector<Formula> parts;
      for (const Formula& p : f.parts()) parts.push_back(substitute(p, live));
      return f.kind() == FKind::conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    default: break;
  }

  // Quantifiers: the bound (if any) lies outside the binder's scope.
  Var x = f.bound_var();
  std::optional<Term> bound;
  if (f.kind() == FKind::bforall || f.kind() == FKind::bexists) bound = substitute(f.bound(), live);
  live.erase(x);
  Formula body = f.body();
  bool capture = false;
  for (const auto& [v, t] : live)
    if (body.mentions(v) && t.mentions(x)) capture = true;
  if (capture) {
    VarSet avoid = body.free_vars();
    for (const auto& [v, t] : live) avoid = var_union(avoid, t.free_vars());
    Var fresh = Var::fresh(x, avoid);
    body = substitute(body, x, Term::var(fresh));
    x = fresh;
  }
  body = substitute(body, live);
  switch (f.kind()) {
    case FKind::forall: return Formula::forall(x, body);
    case FKind::exists: return Formula::exists(x, body);
    case FKind::bforall: return Formula::forall_le(x, *bound, body);
    default: return Formula::exists_le(x, *bound, body);
  }
}

Formula substitute(const Formula& f, Var x, const Term& by) { return substitute(f, Substitution{{x, by}}); }

}  // namespace ordflow::logic
