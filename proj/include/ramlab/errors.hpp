#pragma once

#include <stdexcept>
#include <string>

namespace ramlab {

enum class ErrorCode {
  InvalidInput,
  ZeroGerm,
  PrecisionExhausted,
  NotOnCurve,
  SingularAtPoint,
  NotZeroDimensional,
  NonReduced,
  UnresolvableWithoutExtension,
  NotFixingCenter,
  NotRegularOnChart,
  CurveInDivisor,
  GenericFiberSingular,
  NotAutomorphism,
  LineInDivisor,
  UnsupportedIdealShape,
  NotContaining,
  NotInRadical,
  NotMonic,
  AnnihilatorCapExceeded,
  InvalidIx,
  NotVanishing,
  IsolationUndecidable,
  NoTtfunFound,
  SyntaxError,
  SemanticError,
  DivisionByZero,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ramlab
