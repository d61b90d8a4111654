#pragma once

#include "ordflow/logic/term.hpp"
#include "ordflow/natural.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ordflow::logic {

// Write-once table of defined functions, consulted by the text parser.
class FunctionRegistry {
 public:
  // Checks that the value never exceeds the bound on [0, grid_max]^arity and
  // that the bodies only mention their own variables. Throws BoundViolation,
  // FreeVariableViolation, or Error for a duplicate name.
  FunctionPtr define(DefinedFunction f, const Natural& grid_max = 8);
  FunctionPtr find(std::string_view name) const;
  std::vector<FunctionPtr> all() const;

 private:
  std::map<std::string, FunctionPtr, std::less<>> functions_;
};

// The bound check performed by define(), usable on unregistered functions.
void check_function_bound(const DefinedFunction& f, const Natural& grid_max);

}  // namespace ordflow::logic
