#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tribo {

enum class ErrorKind {
  InvalidInput,
  Configuration,
  DegenerateSignal,
  Parse,
  Io,
  Schema,
  Selection,
  FitDomain,
  Sampling,
  LowConfidence,
  Registration,
  Lookup,
  Phase,
};

std::string_view toString(ErrorKind kind) noexcept;

/// Base of every error the library throws. The kind is the category the CLI
/// reports and maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(ErrorKind::Parse, message), line_(line) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when too many posterior samples never reach the RUL threshold.
class LowConfidenceError : public Error {
 public:
  LowConfidenceError(const std::string& message, double censoredFraction)
      : Error(ErrorKind::LowConfidence, message),
        censoredFraction_(censoredFraction) {}

  double censoredFraction() const noexcept { return censoredFraction_; }

 private:
  double censoredFraction_;
};

}  // namespace tribo
