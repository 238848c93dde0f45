#include "edgesync/error.h"

namespace edgesync {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonSymmetric: return "NonSymmetric";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kMuSearchFailed: return "MuSearchFailed";
    case ErrorCode::kNotStabilizable: return "NotStabilizable";
    case ErrorCode::kDiverged: return "Diverged";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kEmptyWindow: return "EmptyWindow";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace edgesync
