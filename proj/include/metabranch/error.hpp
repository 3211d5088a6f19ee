#pragma once

#include <stdexcept>
#include <string>

namespace metabranch {

enum class ErrorCode {
  ZeroInput,
  InsufficientPrecision,
  InvalidField,
  TrivialDiscriminant,
  DimensionTooLarge,
  NotIsotropic,
  NotGenuine,
  SnapFailure,
  NotIntegral,
  EvenResidueChar,
  NotSpecialLinear,
  NotAlternating,
  NotTriangular,
};

const char* error_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace metabranch
