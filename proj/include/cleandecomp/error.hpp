#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cleandecomp {

enum class ErrorCode {
  ParseError,
  DenominatorNotUnit,
  NotAUnit,
  UnsupportedRing,
  ShapeMismatch,
  DescriptorMismatch,
  NoUnitPivot,
  InternalPatternViolation,
  SizeTooSmall,
  TwoNotInvertible,
  TooLarge,
  NotFinite,
  NoScalarRule,
  CapExceeded,
  BadInput,
  NotInvertible,
  UnsupportedOrder,
  BadFactorization,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// that callers (and the CLI) can distinguish input errors from failed
/// constructions without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cleandecomp
