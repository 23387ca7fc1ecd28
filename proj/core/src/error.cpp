#include "covertorus/error.hpp"

namespace covertorus {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPrimitive:
      return "NonPrimitive";
    case ErrorCode::kEmptyTorus:
      return "EmptyTorus";
    case ErrorCode::kReducible:
      return "Reducible";
    case ErrorCode::kArityMismatch:
      return "ArityMismatch";
    case ErrorCode::kEmptySet:
      return "EmptySet";
    case ErrorCode::kEmptyWithinBound:
      return "EmptyWithinBound";
    case ErrorCode::kNotMember:
      return "NotMember";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kPreconditionViolated:
      return "PreconditionViolated";
    case ErrorCode::kWitnessVerificationFailed:
      return "WitnessVerificationFailed";
    case ErrorCode::kNotSpecialization:
      return "NotSpecialization";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace covertorus
