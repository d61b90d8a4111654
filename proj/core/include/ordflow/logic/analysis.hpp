#pragma once

#include "ordflow/logic/formula.hpp"

#include <utility>
#include <vector>

namespace ordflow::logic {

// A term whose value has bit-length polynomial in the bit-lengths of its
// variables: arithmetic primitives only, with exp2 applied to poly-length terms.
bool is_poly_size(const Term& t);

// A term whose value is itself bounded by a polynomial in the bit-lengths of
// its variables: constants, len(T) for poly-size T, and +, *, succ, monus,
// half, shr, div of such terms. This is the syntactic "polynomial length".
bool is_poly_length(const Term& t);

// Poly-length term P with |t| <= P at every assignment. Throws NotPolynomial
// when t is not poly-size.
Term bitlen_bound(const Term& t);

// Term that evaluates to 0 exactly when the quantifier-free formula holds.
// Throws ClassViolation on quantified input.
Term zero_iff(const Formula& f);

// if f then a else b, for quantifier-free f.
Term if_then_else(const Formula& f, Term a, Term b);

// Pulls the quantifiers of a universal formula (forall, bounded forall, and,
// or) to the front: f is equivalent to forall vars. matrix, with the matrix
// quantifier-free and the vars fresh for f. Throws ClassViolation otherwise.
std::pair<std::vector<Var>, Formula> prenex_universal(const Formula& f);

// Collects all subterms (including t itself) in first-occurrence order.
void collect_subterms(const Term& t, std::vector<Term>& out);
void collect_subterms(const Formula& f, std::vector<Term>& out);

}  // namespace ordflow::logic
