#pragma once

#include "ordflow/logic/var.hpp"
#include "ordflow/natural.hpp"

#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ordflow::logic {

enum class Op : std::uint8_t {
  var,
  constant,
  succ,
  add,
  mul,
  monus,
  half,    // floor(a / 2)
  bitlen,  // |a|
  exp2,    // 2^a
  shr,     // floor(a / 2^n)
  div,     // floor(a / b), 0 when b = 0
  pair,
  proj1,
  proj2,
  cond,  // cond(c, a, b) = a if c = 0 else b
  call,
  // ordinal primitives acting on codes; invalid codes read as zero
  olt,  // 1 if decode(a) < decode(b) else 0
  oadd,
  omul,
  omonus,
  odiv,
  oembed,  // code of the finite ordinal n
  ovalid,  // 1 if a is a valid code else 0
};

const char* op_name(Op op);
// Number of arguments, or -1 for variable arity (calls).
int op_arity(Op op);

struct DefinedFunction;
class TermNode;

// Immutable, shared term. Cheap to copy.
class Term {
 public:
  Term() = default;

  static Term var(Var v);
  static Term var(std::string_view name) { return var(Var(name)); }
  static Term constant(Natural n);
  static Term make(Op op, std::vector<Term> args);
  static Term call(std::shared_ptr<const DefinedFunction> f, std::vector<Term> args);

  bool valid() const { return node_ != nullptr; }
  Op op() const;
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }
  Var variable() const;            // op() == var
  const Natural& value() const;    // op() == constant
  const DefinedFunction& function() const;  // op() == call
  const std::shared_ptr<const DefinedFunction>& function_ptr() const;
  const VarSet& free_vars() const;
  bool mentions(Var v) const { return var_contains(free_vars(), v); }
  std::size_t size() const;

  const TermNode* node() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend struct TermAccess;

 private:
  std::shared_ptr<const TermNode> node_;
};

using Substitution = std::map<Var, Term>;

// Simultaneous replacement of variables.
Term substitute(const Term& t, const Substitution& s);
Term substitute(const Term& t, Var x, const Term& by);

// Builders.
Term constant(const Natural& n);
Term succ(Term a);
Term half(Term a);
Term bitlen(Term a);
Term exp2(Term a);
Term shr(Term a, Term n);
Term pair(Term a, Term b);
Term proj1(Term a);
Term proj2(Term a);
Term cond(Term c, Term a, Term b);
Term olt(Term a, Term b);
Term oadd(Term a, Term b);
Term omul(Term a, Term b);
Term omonus(Term a, Term b);
Term odiv(Term a, Term b);
Term oembed(Term n);
Term ovalid(Term a);

Term operator+(Term a, Term b);
Term operator*(Term a, Term b);
Term operator-(Term a, Term b);  // monus
Term operator/(Term a, Term b);

// Recursion on notation: f(0, xs) = base, f(w, xs) = step(w, f(w/2, xs), xs).
// Without a recursion variable the function is explicit: f(xs) = base.
struct DefinedFunction {
  std::string name;
  std::vector<Var> params;
  std::optional<Var> rec_var;
  Var prev_var;  // stands for f(floor(w/2), xs) inside step
  Term base;
  Term step;
  Term bound;  // over (rec_var, params)

  std::size_t arity() const { return params.size() + (rec_var ? 1 : 0); }
};

using FunctionPtr = std::shared_ptr<const DefinedFunction>;

}  // namespace ordflow::logic
