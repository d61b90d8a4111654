#pragma once

#include "ordflow/error.hpp"
#include "ordflow/natural.hpp"
#include "ordflow/ordinal.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ordflow {

struct Counterexample {
  std::string condition;  // short name of the failed check
  std::vector<std::pair<std::string, Natural>> env;
  std::optional<Ordinal> ordinal;  // stage of an ordinal flow
  std::optional<Natural> step;     // stage of a k-flow or program
  std::string detail;

  std::string describe() const;
};

struct FlowVerdict {
  bool valid = true;
  bool exact = true;
  std::optional<Counterexample> counterexample;  // present iff !valid
  std::size_t points = 0;                        // grid points examined

  void fail(Counterexample c) {
    valid = false;
    counterexample = std::move(c);
  }
};

class CounterexampleError : public Error {
 public:
  CounterexampleError(const std::string& what, Counterexample c)
      : Error(what + ": " + c.describe()), counterexample_(std::move(c)) {}
  const Counterexample& counterexample() const { return counterexample_; }

 private:
  Counterexample counterexample_;
};

#define ORDFLOW_CX_ERROR(Name)                     \
  class Name : public CounterexampleError {       \
   public:                                         \
    using CounterexampleError::CounterexampleError; \
  }

ORDFLOW_CX_ERROR(BoundViolation);
ORDFLOW_CX_ERROR(EndpointMismatch);
ORDFLOW_CX_ERROR(WitnessSearchFailed);
ORDFLOW_CX_ERROR(HerbrandDisjunctionFails);
ORDFLOW_CX_ERROR(NotDisjoint);

#undef ORDFLOW_CX_ERROR

}  // namespace ordflow
