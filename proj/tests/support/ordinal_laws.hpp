#pragma once

#include "ordflow/ordinal.hpp"

#include <string>
#include <vector>

namespace laws {

// Checks every algebraic law of the ordinal representation on (a, b, c) and
// returns a description of each violated law.
std::vector<std::string> check_triple(const ordflow::Ordinal& a, const ordflow::Ordinal& b,
                                      const ordflow::Ordinal& c);

// m < n iff from_nat(m) < from_nat(n), plus to_nat round trip, for m, n <= limit.
std::vector<std::string> check_naturals(unsigned limit);

}  // namespace laws
