#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smellrole {

/// Base of every error raised by the toolkit. `code()` is a stable,
/// machine-readable identifier (e.g. "UnknownMetric").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) {}

  [[nodiscard]] const std::string &code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed input with a source position (Java text, rule cards, manifests).
class PositionedError : public Error {
 public:
  PositionedError(std::string code, const std::string &message,
                  std::size_t line, std::size_t column)
      : Error(std::move(code), message + " at " + std::to_string(line) + ":" +
                                   std::to_string(column)),
        line_(line), column_(column) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace smellrole
