#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pla {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  UnknownRelation,
  ArityMismatch,
  UnboundVariable,
  UnknownAggregationFunction,
  EmptyAggregationRange,
  EmptyInput,
  NotAggregationFree,
  NoLimitMethod,
  NumericNonConvergence,
  InvalidSpectrum,
  JitterTooLarge,
  CycleDetected,
  ThetaUsesNonParent,
  TooManyWorlds,
  NetworkHasAggregation,
  IncompleteType,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception; `code()` is the
// stable discriminator, `what()` a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Parse failures carry a 1-based line/column into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::ParseError, std::to_string(line) + ":" +
                                         std::to_string(column) + ": " +
                                         message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pla
