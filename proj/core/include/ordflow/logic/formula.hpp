#pragma once

#include "ordflow/logic/term.hpp"

#include <memory>
#include <vector>

namespace ordflow::logic {

enum class FKind : std::uint8_t {
  eq,       // t = s, or t != s when negated
  le,       // t <= s, or not (t <= s) when negated
  top,
  bottom,
  conj,
  disj,
  forall,
  exists,
  bforall,  // forall x <= bound
  bexists,  // exists x <= bound
};

class FormulaNode;

// Immutable formula in negation normal form: negation sits on atoms only.
class Formula {
 public:
  Formula() = default;

  static Formula top();
  static Formula bottom();
  static Formula eq(Term a, Term b);
  static Formula neq(Term a, Term b);
  static Formula le(Term a, Term b);
  static Formula nle(Term a, Term b);  // not (a <= b)
  // n-ary; nested conjunctions are kept as given. Empty lists give top / bottom.
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula forall(Var x, Formula body);
  static Formula exists(Var x, Formula body);
  static Formula forall_le(Var x, Term bound, Formula body);
  static Formula exists_le(Var x, Term bound, Formula body);

  bool valid() const { return node_ != nullptr; }
  FKind kind() const;
  bool negated() const;                       // atoms only
  const Term& lhs() const;                    // atoms only
  const Term& rhs() const;                    // atoms only
  const std::vector<Formula>& parts() const;  // conj / disj
  Var bound_var() const;                      // quantifiers
  const Term& bound() const;                  // bounded quantifiers
  const Formula& body() const;                // quantifiers
  const VarSet& free_vars() const;
  bool mentions(Var v) const { return var_contains(free_vars(), v); }
  bool is_atom() const { return kind() == FKind::eq || kind() == FKind::le; }
  bool is_quantifier() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend struct FormulaAccess;

 private:
  std::shared_ptr<const FormulaNode> node_;
};

Formula operator&&(Formula a, Formula b);
Formula operator||(Formula a, Formula b);

// De Morgan dual; negate(negate(f)) == f structurally.
Formula negate(const Formula& f);
// negate(a) or b.
Formula implies(const Formula& a, const Formula& b);

// Capture-avoiding simultaneous substitution; bound variables are renamed
// with primes when they would capture a free variable of a replacement.
Formula substitute(const Formula& f, const Substitution& s);
Formula substitute(const Formula& f, Var x, const Term& by);

}  // namespace ordflow::logic
