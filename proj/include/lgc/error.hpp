#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgc {

enum class ErrorCode {
  kSyntax,
  kSchema,
  kInvalidDigit,
  kEmptyAttractor,
  kBudgetExceeded,
  kNoConvergence,
  kNotInProjection,
  kInvalidCoding,
  kEmptyInput,
  kCodingsNotDiverging,
  kNoGapFound,
  kOracleCapExceeded,
  kTooFewGaps,
  kChainUnavailable,
  kVerificationFailed,
  kIo,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `code()` tells callers which
/// contract was broken; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lgc
