#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rddr {

enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  NonFinite,
  ZeroMatrix,
  SingularSystem,
  EmptyInput,
  InfeasibleOrthogonal,
  ParseError,
  RaggedRows,
  EmptyFile,
  IoError,
};

/// Stable identifier used in machine-readable error objects.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the CSV reader; carries a 1-based line and field location.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t line,
             std::size_t column)
      : Error(code, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace rddr
