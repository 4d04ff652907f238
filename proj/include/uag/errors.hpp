#pragma once

#include <stdexcept>
#include <string>

namespace uag {

enum class ErrorKind {
  unknown_symbol,
  arity_mismatch,
  index_out_of_range,
  signature_mismatch,
  rank_mismatch,
  empty_generation,
  budget_exceeded,
  duplicate_name,
  table_error,
  lexical_error,
  unknown_name,
  precondition,
  transport_not_closed,
  missing_basis,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parser diagnostics carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, int line, int column, const std::string& message)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace uag
