#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covertorus {

enum class ErrorCode {
  kNonPrimitive,
  kEmptyTorus,
  kReducible,
  kArityMismatch,
  kEmptySet,
  kEmptyWithinBound,
  kNotMember,
  kLengthMismatch,
  kPreconditionViolated,
  kWitnessVerificationFailed,
  kNotSpecialization,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Domain error raised by library operations. The CLI renders it as
/// `error: <code>: <message>` and exits with status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace covertorus
