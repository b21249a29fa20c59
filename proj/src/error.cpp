#include "lgc/error.hpp"

namespace lgc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kInvalidDigit: return "InvalidDigit";
    case ErrorCode::kEmptyAttractor: return "EmptyAttractor";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotInProjection: return "NotInProjection";
    case ErrorCode::kInvalidCoding: return "InvalidCoding";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kCodingsNotDiverging: return "CodingsNotDiverging";
    case ErrorCode::kNoGapFound: return "NoGapFound";
    case ErrorCode::kOracleCapExceeded: return "OracleCapExceeded";
    case ErrorCode::kTooFewGaps: return "TooFewGaps";
    case ErrorCode::kChainUnavailable: return "ChainUnavailable";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace lgc
