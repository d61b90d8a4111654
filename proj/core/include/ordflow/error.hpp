#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ORDFLOW_ERROR(Name)                  \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

ORDFLOW_ERROR(DivisionByZeroOrdinal);
ORDFLOW_ERROR(NotFinite);
ORDFLOW_ERROR(NotSuccessor);
ORDFLOW_ERROR(InvalidCode);
ORDFLOW_ERROR(UnboundVariable);
ORDFLOW_ERROR(ArityError);
ORDFLOW_ERROR(UnknownFunction);
ORDFLOW_ERROR(EvalLimit);
ORDFLOW_ERROR(ClassViolation);
ORDFLOW_ERROR(ShapeViolation);
ORDFLOW_ERROR(NotPolynomial);
ORDFLOW_ERROR(FreeVariableViolation);
ORDFLOW_ERROR(InvalidProgram);
ORDFLOW_ERROR(NotPolynomialLength);
ORDFLOW_ERROR(PreconditionFailed);
ORDFLOW_ERROR(FormatError);

#undef ORDFLOW_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ordflow
