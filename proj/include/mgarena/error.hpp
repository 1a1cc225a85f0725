#pragma once

#include <stdexcept>
#include <string>

namespace mgarena {

enum class ErrorCode {
  NonUnitary,
  DeterminantMismatch,
  NotSpecialOrthogonal,
  NumericalBreakdown,
  BondOutOfRange,
  RangeError,
  AsymmetryTooLarge,
  NotPure,
  OddDimension,
  OddCount,
  IndexError,
  TooLarge,
  ConfigError,
  EmptyInput,
  InsufficientOverlap,
  IoError,
  ParseError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mgarena
