#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minply {

enum class ErrorCode {
  kUncoveredPoint,
  kSquareMissesLine,
  kSquareMissesSlab,
  kPointOutsideSlab,
  kPointOffSide,
  kNotAClique,
  kTooManyReversals,
  kInfeasibleInput,
  kCapExceeded,
  kParseError,
  kValidationError,
  kGenerationFailed,
  kModeMismatch,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type. `subject` carries the
// offending point/square id, the line number for parse errors, or -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, long subject = -1);

  ErrorCode code() const noexcept { return code_; }
  long subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  long subject_;
};

}  // namespace minply
