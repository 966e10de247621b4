#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cwg {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix sizes handed to an operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a connected graph received one without a spanning tree.
class ConnectivityError : public Error {
 public:
  using Error::Error;
};

/// The graph is not structurally balanced, or a supplied zeta does not match it.
class BalanceError : public Error {
 public:
  using Error::Error;
};

/// Signature clusters could not be separated at the requested tolerance.
class PartitionError : public Error {
 public:
  using Error::Error;
};

/// Numerical blow-up or bad integration parameters.
class SimulationError : public Error {
 public:
  using Error::Error;
};

/// Text input that does not follow a file grammar. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message, const std::string& source = "")
      : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// Message without the location prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace cwg
