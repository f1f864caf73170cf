#pragma once

#include <stdexcept>
#include <string>

namespace qsub {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QSUB_ERROR(Name)                               \
  class Name : public Error {                          \
   public:                                             \
    explicit Name(const std::string& what)             \
        : Error(std::string(#Name ": ") + what) {}     \
  }

QSUB_ERROR(ParseError);
QSUB_ERROR(PreconditionViolated);
QSUB_ERROR(NoCatalogMatch);
QSUB_ERROR(ColorMismatch);
QSUB_ERROR(EmptyRow);
QSUB_ERROR(NotFactorizable);
QSUB_ERROR(NotInCU);
QSUB_ERROR(FrameTooLarge);
QSUB_ERROR(ClosureViolation);
QSUB_ERROR(NotInSet);
QSUB_ERROR(TooLarge);
QSUB_ERROR(ShapeMismatch);
QSUB_ERROR(LawViolation);
QSUB_ERROR(NonBinaryEntry);
QSUB_ERROR(NotUnitary);
QSUB_ERROR(TableMismatch);

#undef QSUB_ERROR

}  // namespace qsub
