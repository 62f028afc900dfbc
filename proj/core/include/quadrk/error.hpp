#ifndef QUADRK_ERROR_HPP
#define QUADRK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadrk {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  FieldError,
  ArityMismatch,
  IndexOutOfRange,
  SingularSubstitution,
  SingularMatrix,
  DimensionMismatch,
  SyntaxError,
  UnknownVariable,
  NonCanonicalCoefficient,
  DegreeTooHigh,
  NotNilpotent,
  RankMismatch,
  RankTooHigh,
  OutOfScope,
  PreconditionViolated,
  NotJacobianInput,
  InvalidSpec,
  HashMismatch,
  ClaimFailed,
  IoError,
  InternalContradiction,
};

std::string_view to_string(ErrorCode code);

// All recoverable failures of the library are reported through this type.
// Mathematically negative answers (not triangularizable, not a Jacobian
// matrix, ...) are values, never exceptions.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Thrown when a step that a theorem guarantees fails. Always a bug or a
// counterexample, never an input condition.
class InternalContradiction : public Error {
 public:
  explicit InternalContradiction(const std::string& what)
      : Error(ErrorCode::InternalContradiction, what) {}
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace quadrk

#endif  // QUADRK_ERROR_HPP
