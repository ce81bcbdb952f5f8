#pragma once

#include <stdexcept>
#include <string>

namespace mhx {

// Exit codes are part of the CLI contract: 0 ok, 1 parse, 2 shape/validity,
// 3 admissibility, 4 numerical.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const = 0;
};

#define MHX_ERROR(Name, code)                         \
  class Name : public Error {                         \
   public:                                            \
    using Error::Error;                               \
    int exit_code() const override { return code; }  \
  };

MHX_ERROR(ParseError, 1)
MHX_ERROR(FiltrationError, 1)
MHX_ERROR(DimensionMismatch, 2)
MHX_ERROR(ShapeError, 2)
MHX_ERROR(NilpotencyError, 2)
MHX_ERROR(PreconditionError, 2)
MHX_ERROR(NotAMorphism, 2)
MHX_ERROR(InvalidPeriodMatrix, 2)
MHX_ERROR(DegenerateConfiguration, 2)
MHX_ERROR(NonExistence, 3)
MHX_ERROR(AdmissibilityError, 3)
MHX_ERROR(VerificationFailure, 4)

#undef MHX_ERROR

/// The bigrading failed at (a, b): either the sum stopped being direct there or
/// a filtration step could not be rebuilt from the pieces.
class NotAnMHS : public Error {
 public:
  NotAnMHS(int a, int b, const std::string& what)
      : Error(what + " at (" + std::to_string(a) + "," + std::to_string(b) + ")"), a_(a), b_(b) {}
  int exit_code() const override { return 2; }
  int a() const { return a_; }
  int b() const { return b_; }

 private:
  int a_;
  int b_;
};

}  // namespace mhx
