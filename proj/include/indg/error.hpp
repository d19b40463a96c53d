#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace indg {

// Error categories. The CLI maps each one to its own exit code.

/// Invalid argument or violated precondition (bad node id, no hub, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search would exceed its configured budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed input text. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& detail, const std::string& source = {})
      : std::runtime_error((source.empty() ? "" : source + ":") + "line " + std::to_string(line) +
                           ": " + detail),
        line_(line),
        detail_(detail) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

  ParseError with_source(const std::string& source) const { return {line_, detail_, source}; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed equilibrium failed verification.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace indg
