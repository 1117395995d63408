#include "cmoment/error.hpp"

namespace cmoment {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedCharPoly: return "MalformedCharPoly";
    case ErrorCode::kMissingMoment: return "MissingMoment";
    case ErrorCode::kDegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::kLevelMismatch: return "LevelMismatch";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kEmptyPolynomial: return "EmptyPolynomial";
    case ErrorCode::kNotCharacteristic: return "NotCharacteristic";
    case ErrorCode::kDuplicateRoots: return "DuplicateRoots";
    case ErrorCode::kNotAnalytic: return "NotAnalytic";
    case ErrorCode::kEmptyZeroSet: return "EmptyZeroSet";
    case ErrorCode::kRelationViolated: return "RelationViolated";
    case ErrorCode::kInconsistentExtension: return "InconsistentExtension";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace cmoment
