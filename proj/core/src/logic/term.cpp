#include "ordflow/logic/term.hpp"

#include "ordflow/error.hpp"

namespace ordflow::logic {

class TermNode {
 public:
  Op op;
  std::vector<Term> args;
  Var variable;
  Natural value;
  FunctionPtr function;
  VarSet free_vars;
  std::size_t size = 1;
};

namespace {

struct OpInfo {
  const char* name;
  int arity;
};

OpInfo info(Op op) {
  switch (op) {
    case Op::var: return {"var", 0};
    case Op::constant: return {"const", 0};
    case Op::succ: return {"succ", 1};
    case Op::add: return {"add", 2};
    case Op::mul: return {"mul", 2};
    case Op::monus: return {"monus", 2};
    case Op::half: return {"half", 1};
    case Op::bitlen: return {"len", 1};
    case Op::exp2: return {"exp2", 1};
    case Op::shr: return {"shr", 2};
    case Op::div: return {"div", 2};
    case Op::pair: return {"pair", 2};
    case Op::proj1: return {"fst", 1};
    case Op::proj2: return {"snd", 1};
    case Op::cond: return {"ifz", 3};
    case Op::call: return {"call", -1};
    case Op::olt: return {"olt", 2};
    case Op::oadd: return {"oadd", 2};
    case Op::omul: return {"omul", 2};
    case Op::omonus: return {"omonus", 2};
    case Op::odiv: return {"odiv", 2};
    case Op::oembed: return {"o", 1};
    case Op::ovalid: return {"ovalid", 1};
  }
  return {"?", 0};
}

Term wrap(std::shared_ptr<TermNode> n);

}  // namespace

const char* op_name(Op op) { return info(op).name; }
int op_arity(Op op) { return info(op).arity; }

// Term's only data member is the node pointer; this helper gives the builders
// below a way to construct one without exposing a public constructor.
struct TermAccess {
  static Term make(std::shared_ptr<const TermNode> n) {
    Term t;
    t.node_ = std::move(n);
    return t;
  }
};

namespace {

Term wrap(std::shared_ptr<TermNode> n) {
  for (const Term& a : n->args) {
    n->free_vars = var_union(n->free_vars, a.free_vars());
    n->size += a.size();
  }
  return TermAccess::make(std::move(n));
}

}  // namespace

Term Term::var(Var v) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::var;
  n->variable = v;
  n->free_vars = {v};
  return wrap(std::move(n));
}

Term Term::constant(Natural value) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::constant;
  n->value = std::move(value);
  return wrap(std::move(n));
}

Term Term::make(Op op, std::vector<Term> args) {
  if (op == Op::var || op == Op::constant || op == Op::call)
    throw ArityError(std::string("use the dedicated builder for ") + op_name(op));
  if (static_cast<int>(args.size()) != op_arity(op))
    throw ArityError(std::string(op_name(op)) + " expects " + std::to_string(op_arity(op)) + " arguments");
  for (const Term& a : args)
    if (!a.valid()) throw ArityError(std::string("missing argument to ") + op_name(op));
  auto n = std::make_shared<TermNode>();
  n->op = op;
  n->args = std::move(args);
  return wrap(std::move(n));
}

Term Term::call(FunctionPtr f, std::vector<Term> args) {
  if (!f) throw UnknownFunction("call to an undefined function");
  if (args.size() != f->arity())
    throw ArityError(f->name + " expects " + std::to_string(f->arity()) + " arguments");
  auto n = std::make_shared<TermNode>();
  n->op = Op::call;
  n->args = std::move(args);
  n->function = std::move(f);
  return wrap(std::move(n));
}

Op Term::op() const { return node_->op; }
const std::vector<Term>& Term::args() const { return node_->args; }
Var Term::variable() const { return node_->variable; }
const Natural& Term::value() const { return node_->value; }
const DefinedFunction& Term::function() const { return *node_->function; }
const FunctionPtr& Term::function_ptr() const { return node_->function; }
const VarSet& Term::free_vars() const { return node_->free_vars; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (x.op != y.op || x.size != y.size) return false;
  switch (x.op) {
    case Op::var: return x.variable == y.variable;
    case Op::constant: return x.value == y.value;
    case Op::call:
      if (x.function->name != y.function->name) return false;
      break;
    default: break;
  }
  return x.args == y.args;
}

Term substitute(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  bool touched = false;
  for (const auto& [v, _] : s)
    if (t.mentions(v)) {
      touched = true;
      break;
    }
  if (!touched) return t;
  if (t.op() == Op::var) return s.at(t.variable());
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(substitute(a, s));
  if (t.op() == Op::call) return Term::call(t.function_ptr(), std::move(args));
  return Term::make(t.op(), std::move(args));
}

Term substitute(const Term& t, Var x, const Term& by) { return substitute(t, Substitution{{x, by}}); }

Term constant(const Natural& n) { return Term::constant(n); }
Term succ(Term a) { return Term::make(Op::succ, {std::move(a)}); }
Term half(Term a) { return Term::make(Op::half, {std::move(a)}); }
Term bitlen(Term a) { return Term::make(Op::bitlen, {std::move(a)}); }
Term exp2(Term a) { return Term::make(Op::exp2, {std::move(a)}); }
Term shr(Term a, Term n) { return Term::make(Op::shr, {std::move(a), std::move(n)}); }
Term pair(Term a, Term b) { return Term::make(Op::pair, {std::move(a), std::move(b)}); }
Term proj1(Term a) { return Term::make(Op::proj1, {std::move(a)}); }
Term proj2(Term a) { return Term::make(Op::proj2, {std::move(a)}); }
Term cond(Term c, Term a, Term b) { return Term::make(Op::cond, {std::move(c), std::move(a), std::move(b)}); }
Term olt(Term a, Term b) { return Term::make(Op::olt, {std::move(a), std::move(b)}); }
Term oadd(Term a, Term b) { return Term::make(Op::oadd, {std::move(a), std::move(b)}); }
Term omul(Term a, Term b) { return Term::make(Op::omul, {std::move(a), std::move(b)}); }
Term omonus(Term a, Term b) { return Term::make(Op::omonus, {std::move(a), std::move(b)}); }
Term odiv(Term a, Term b) { return Term::make(Op::odiv, {std::move(a), std::move(b)}); }
Term oembed(Term n) { return Term::make(Op::oembed, {std::move(n)}); }
Term ovalid(Term a) { return Term::make(Op::ovalid, {std::move(a)}); }

Term operator+(Term a, Term b) { return Term::make(Op::add, {std::move(a), std::move(b)}); }
Term operator*(Term a, Term b) { return Term::make(Op::mul, {std::move(a), std::move(b)}); }
Term operator-(Term a, Term b) { return Term::make(Op::monus, {std::move(a), std::move(b)}); }
Term operator/(Term a, Term b) { return Term::make(Op::div, {std::move(a), std::move(b)}); }

}  // namespace ordflow::logic
