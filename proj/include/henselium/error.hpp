#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace henselium {

enum class ErrorCode {
  RankMismatch,
  FieldMismatch,
  InvalidArgument,
  ZeroLeadingTerm,
  PrecisionExceeded,
  PrecisionUnreachable,
  InsufficientPrecision,
  NegativeCoarseValue,
  NotMonic,
  NotIntegral,
  NotSimpleRoot,
  NotApproximateRoot,
  NonTermination,
  NotCoprime,
  ResidueMismatch,
  EmptySample,
  PreconditionViolated,
  HypothesisNotMet,
  NoResidueSplit,
  SyntaxError,
  UnknownVariable,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// the CLI can render a structured error report.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace henselium
