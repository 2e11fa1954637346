#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oodscreen {

enum class ErrorCode {
  InvalidInput,
  InvalidThreshold,
  InvalidTemperature,
  DimensionError,
  EmptyInput,
  CalibrationError,
  DuplicateId,
  IdSetMismatch,
  DegenerateLabels,
  DegenerateMarginals,
  FormatError,
  TruncationError,
  SchemaError,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::InvalidTemperature: return "InvalidTemperature";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::CalibrationError: return "CalibrationError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::IdSetMismatch: return "IdSetMismatch";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::DegenerateMarginals: return "DegenerateMarginals";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::TruncationError: return "TruncationError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code identifies the failure
/// class; the message names the offending field, row, or dimension.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace oodscreen
