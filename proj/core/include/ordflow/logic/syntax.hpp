#pragma once

#include "ordflow/logic/formula.hpp"
#include "ordflow/logic/functions.hpp"

#include <string>
#include <string_view>

namespace ordflow::logic {

// Concrete syntax, e.g.
//   forall y <= x. (y + 1 > x or exists z <= y. z * 2 = y)
// Terms: + - (monus) * / (floor division), numbers, variables, ord[w*2+1]
// for ordinal codes, and calls succ half len exp2 shr pair fst snd ifz olt
// oadd omul omonus odiv o ovalid or any registered function.
// Formulas: = != <= < >= >, true, false, not, and, or, ->, forall, exists.
// Printing produces text that parses back to a structurally equal value.
std::string to_text(const Term& t);
std::string to_text(const Formula& f);

Term parse_term(std::string_view text, const FunctionRegistry* functions = nullptr);
Formula parse_formula(std::string_view text, const FunctionRegistry* functions = nullptr);

}  // namespace ordflow::logic
