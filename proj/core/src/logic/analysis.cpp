#include "ordflow/logic/analysis.hpp"

#include "ordflow/error.hpp"
#include "ordflow/logic/syntax.hpp"

#include <algorithm>

namespace ordflow::logic {

bool is_poly_size(const Term& t) {
  switch (t.op()) {
    case Op::var:
    case Op::constant: return true;
    case Op::exp2: return is_poly_length(t.arg(0));
    case Op::call: {
      if (!is_poly_size(t.function().bound)) return false;
      break;
    }
    case Op::olt:
    case Op::oadd:
    case Op::omul:
    case Op::omonus:
    case Op::odiv:
    case Op::oembed:
    case Op::ovalid: return false;
    default: break;
  }
  return std::all_of(t.args().begin(), t.args().end(), [](const Term& a) { return is_poly_size(a); });
}

bool is_poly_length(const Term& t) {
  switch (t.op()) {
    case Op::constant: return true;
    case Op::bitlen: return is_poly_size(t.arg(0));
    case Op::succ:
    case Op::add:
    case Op::mul:
      return std::all_of(t.args().begin(), t.args().end(), [](const Term& a) { return is_poly_length(a); });
    case Op::monus:
    case Op::half:
    case Op::div:
    case Op::shr:
      return is_poly_length(t.arg(0)) &&
             std::all_of(t.args().begin() + 1, t.args().end(), [](const Term& a) { return is_poly_size(a); });
    case Op::cond: return is_poly_size(t.arg(0)) && is_poly_length(t.arg(1)) && is_poly_length(t.arg(2));
    default: return false;
  }
}

namespace {

Term value_bound(const Term& p);

Term call_bound(const Term& t) {
  const DefinedFunction& f = t.function();
  Substitution s;
  std::size_t i = 0;
  if (f.rec_var) s.emplace(*f.rec_var, t.arg(i++));
  for (const Var& v : f.params) s.emplace(v, t.arg(i++));
  return substitute(f.bound, s);
}

// Upper bound on the value of a poly-length term, mentioning only len(x).
Term value_bound(const Term& p) {
  switch (p.op()) {
    case Op::constant: return p;
    case Op::bitlen: return bitlen_bound(p.arg(0));
    case Op::succ: return succ(value_bound(p.arg(0)));
    case Op::add: return value_bound(p.arg(0)) + value_bound(p.arg(1));
    case Op::mul: return value_bound(p.arg(0)) * value_bound(p.arg(1));
    case Op::monus:
    case Op::half:
    case Op::div:
    case Op::shr: return value_bound(p.arg(0));
    case Op::cond: return value_bound(p.arg(1)) + value_bound(p.arg(2));
    default: throw NotPolynomial("term " + to_text(p) + " is not of polynomial length");
  }
}

}  // namespace

Term bitlen_bound(const Term& t) {
  switch (t.op()) {
    case Op::constant: return constant(ordflow::bitlen(t.value()));
    case Op::var: return bitlen(t);
    case Op::succ: return bitlen_bound(t.arg(0)) + constant(1);
    case Op::add: return (bitlen_bound(t.arg(0)) + bitlen_bound(t.arg(1))) + constant(1);
    case Op::mul:
    case Op::cond: {
      std::size_t first = t.op() == Op::cond ? 1 : 0;
      return bitlen_bound(t.arg(first)) + bitlen_bound(t.arg(first + 1));
    }
    case Op::pair: return constant(2) * (bitlen_bound(t.arg(0)) + bitlen_bound(t.arg(1))) + constant(4);
    case Op::monus:
    case Op::half:
    case Op::div:
    case Op::shr:
    case Op::bitlen:
    case Op::proj1:
    case Op::proj2: return bitlen_bound(t.arg(0));
    case Op::exp2: return value_bound(t.arg(0)) + constant(1);
    case Op::call: return bitlen_bound(call_bound(t));
    default: throw NotPolynomial("term " + to_text(t) + " is not of polynomial size");
  }
}

Term zero_iff(const Formula& f) {
  auto diff = [](const Term& a, const Term& b) { return (a - b) + (b - a); };
  auto flip = [](Term z) { return cond(std::move(z), constant(1), constant(0)); };
  switch (f.kind()) {
    case FKind::eq: return f.negated() ? flip(diff(f.lhs(), f.rhs())) : diff(f.lhs(), f.rhs());
    case FKind::le: return f.negated() ? flip(f.lhs() - f.rhs()) : f.lhs() - f.rhs();
    case FKind::top: return constant(0);
    case FKind::bottom: return constant(1);
    case FKind::conj:
    case FKind::disj: {
      Term acc = zero_iff(f.parts()[0]);
      for (std::size_t i = 1; i < f.parts().size(); ++i)
        acc = f.kind() == FKind::conj ? acc + zero_iff(f.parts()[i]) : acc * zero_iff(f.parts()[i]);
      return acc;
    }
    default: throw ClassViolation("a quantified formula has no term indicator: " + to_text(f));
  }
}

Term if_then_else(const Formula& f, Term a, Term b) { return cond(zero_iff(f), std::move(a), std::move(b)); }

namespace {

struct Prenexer {
  VarSet avoid;
  std::vector<Var> chosen;

  Var pick(Var x) {
    Var v = var_contains(avoid, x) ? Var::fresh(x, avoid) : x;
    avoid = var_union(avoid, {v});
    chosen.push_back(v);
    return v;
  }

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case FKind::eq:
      case FKind::le:
      case FKind::top:
      case FKind::bottom: return f;
      case FKind::conj:
      case FKind::disj: {
        std::vector<Formula> parts;
        for (const Formula& p : f.parts()) parts.push_back(run(p));
        return f.kind() == FKind::conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
      }
      case FKind::forall: {
        Var v = pick(f.bound_var());
        return run(substitute(f.body(), f.bound_var(), Term::var(v)));
      }
      case FKind::bforall: {
        Var v = pick(f.bound_var());
        Formula body = run(substitute(f.body(), f.bound_var(), Term::var(v)));
        return Formula::nle(Term::var(v), f.bound()) || body;
      }
      default: throw ClassViolation("not a universal formula: " + to_text(f));
    }
  }
};

}  // namespace

std::pair<std::vector<Var>, Formula> prenex_universal(const Formula& f) {
  Prenexer p;
  p.avoid = f.free_vars();
  Formula m = p.run(f);
  return {p.chosen, m};
}

namespace {

void add_unique(const Term& t, std::vector<Term>& out) {
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

}  // namespace

void collect_subterms(const Term& t, std::vector<Term>& out) {
  add_unique(t, out);
  for (const Term& a : t.args()) collect_subterms(a, out);
}

void collect_subterms(const Formula& f, std::vector<Term>& out) {
  switch (f.kind()) {
    case FKind::eq:
    case FKind::le:
      collect_subterms(f.lhs(), out);
      collect_subterms(f.rhs(), out);
      return;
    case FKind::bforall:
    case FKind::bexists: collect_subterms(f.bound(), out); break;
    default: break;
  }
  for (const Formula& p : f.parts()) collect_subterms(p, out);
}

}  // namespace ordflow::logic
