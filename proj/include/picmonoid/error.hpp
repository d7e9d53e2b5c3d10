#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace picmonoid {

enum class ErrorCode {
  ZeroInput,
  InfiniteCoefficient,
  AllZero,
  NonPrime,
  InsufficientPrecision,
  NegativeScale,
  MissingCap,
  InfiniteType,
  ZeroScale,
  MissingPrime,
  NotInGroup,
  NonUnitGenerator,
  Ramified,
  PrimeMismatch,
  QuadratureFailure,
  InsufficientZeros,
  FixedPointSingular,
  InvalidArgument,
  ParseError,
  UsageError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::InfiniteCoefficient: return "InfiniteCoefficient";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::NegativeScale: return "NegativeScale";
    case ErrorCode::MissingCap: return "MissingCap";
    case ErrorCode::InfiniteType: return "InfiniteType";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::MissingPrime: return "MissingPrime";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::NonUnitGenerator: return "NonUnitGenerator";
    case ErrorCode::Ramified: return "Ramified";
    case ErrorCode::PrimeMismatch: return "PrimeMismatch";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::InsufficientZeros: return "InsufficientZeros";
    case ErrorCode::FixedPointSingular: return "FixedPointSingular";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

/// Process exit status for an error class. 1 is reserved for usage errors.
constexpr int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::UsageError: return 1;
    case ErrorCode::ParseError: return 2;
    case ErrorCode::InvalidArgument: return 3;
    case ErrorCode::InsufficientPrecision: return 4;
    case ErrorCode::QuadratureFailure:
    case ErrorCode::InsufficientZeros: return 5;
    default: return 10 + static_cast<int>(code);
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace picmonoid
