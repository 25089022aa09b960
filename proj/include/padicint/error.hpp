#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padicint {

enum class ErrorKind {
  Domain,            // generic domain violation (bad argument values)
  DomainError,       // prepared linear form evaluated off its congruence class
  UndefinedAtPoint,
  InfiniteMeasure,
  DivergentSum,
  NotFiberReducible,
  EmptySet,
  BudgetExceeded,
  Parse,
};

std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(ErrorKind::Parse, format(message, line, column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + message;
  }

  int line_;
  int column_;
};

}  // namespace padicint
