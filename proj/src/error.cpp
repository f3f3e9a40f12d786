#include "minply/error.hpp"

namespace minply {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUncoveredPoint: return "UncoveredPoint";
    case ErrorCode::kSquareMissesLine: return "SquareMissesLine";
    case ErrorCode::kSquareMissesSlab: return "SquareMissesSlab";
    case ErrorCode::kPointOutsideSlab: return "PointOutsideSlab";
    case ErrorCode::kPointOffSide: return "PointOffSide";
    case ErrorCode::kNotAClique: return "NotAClique";
    case ErrorCode::kTooManyReversals: return "TooManyReversals";
    case ErrorCode::kInfeasibleInput: return "InfeasibleInput";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kModeMismatch: return "ModeMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message, long subject)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      subject_(subject) {}

}  // namespace minply
