#include "metabranch/error.hpp"

namespace metabranch {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::TrivialDiscriminant: return "TrivialDiscriminant";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::NotGenuine: return "NotGenuine";
    case ErrorCode::SnapFailure: return "SnapFailure";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::EvenResidueChar: return "EvenResidueChar";
    case ErrorCode::NotSpecialLinear: return "NotSpecialLinear";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::NotTriangular: return "NotTriangular";
  }
  return "Unknown";
}

}  // namespace metabranch
