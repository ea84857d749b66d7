#include "trollscope/error.hpp"

namespace trollscope {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidFrame: return "InvalidFrame";
    case ErrorCode::kInvalidSubset: return "InvalidSubset";
    case ErrorCode::kNegativeMass: return "NegativeMass";
    case ErrorCode::kDuplicateSubset: return "DuplicateSubset";
    case ErrorCode::kSumNotOne: return "SumNotOne";
    case ErrorCode::kFrameMismatch: return "FrameMismatch";
    case ErrorCode::kTotalConflict: return "TotalConflict";
    case ErrorCode::kNoPriorMessages: return "NoPriorMessages";
    case ErrorCode::kSameUser: return "SameUser";
    case ErrorCode::kRankOutOfBounds: return "RankOutOfBounds";
    case ErrorCode::kUnknownUser: return "UnknownUser";
    case ErrorCode::kInvalidThread: return "InvalidThread";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kMassOutOfRange: return "MassOutOfRange";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace trollscope
