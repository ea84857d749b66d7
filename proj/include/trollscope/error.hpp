#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trollscope {

enum class ErrorCode {
  kInvalidFrame,
  kInvalidSubset,
  kNegativeMass,
  kDuplicateSubset,
  kSumNotOne,
  kFrameMismatch,
  kTotalConflict,
  kNoPriorMessages,
  kSameUser,
  kRankOutOfBounds,
  kUnknownUser,
  kInvalidThread,
  kDegenerate,
  kNotConverged,
  kInvalidSpec,
  kMassOutOfRange,
  kParse,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this type; `code()` tells
/// callers (the CLI in particular) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trollscope
