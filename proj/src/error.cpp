#include "henselium/error.hpp"

namespace henselium {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroLeadingTerm: return "ZeroLeadingTerm";
    case ErrorCode::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::NegativeCoarseValue: return "NegativeCoarseValue";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::NotSimpleRoot: return "NotSimpleRoot";
    case ErrorCode::NotApproximateRoot: return "NotApproximateRoot";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::ResidueMismatch: return "ResidueMismatch";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::NoResidueSplit: return "NoResidueSplit";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
  }
  return "Unknown";
}

}  // namespace henselium
