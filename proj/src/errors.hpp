#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pdl {

enum class ErrorKind {
  Syntax,
  DuplicateHeader,
  UnknownDirective,
  ProbOutOfRange,
  UnboundVariable,
  TypeMismatch,
  DivisionByZero,
  Unsupported,
  InexactBudget,
  MissingVariable,
  CyclicConstraints,
  MalformedConstraint,
  BadInput,
  Io,
  Internal,
};

// 1-based position of a token inside the input text.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Error(ErrorKind kind, std::string message, SourceSpan span)
      : std::runtime_error(std::move(message)), kind_(kind), span_(span) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  ErrorKind kind_;
  std::optional<SourceSpan> span_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::DuplicateHeader: return "duplicate header";
    case ErrorKind::UnknownDirective: return "unknown directive";
    case ErrorKind::ProbOutOfRange: return "probability out of range";
    case ErrorKind::UnboundVariable: return "unbound variable";
    case ErrorKind::TypeMismatch: return "type mismatch";
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::Unsupported: return "unsupported construct";
    case ErrorKind::InexactBudget: return "inexact under unroll budget";
    case ErrorKind::MissingVariable: return "missing variable";
    case ErrorKind::CyclicConstraints: return "cyclic constraints";
    case ErrorKind::MalformedConstraint: return "malformed constraint";
    case ErrorKind::BadInput: return "bad input";
    case ErrorKind::Io: return "io error";
    case ErrorKind::Internal: return "internal error";
  }
  return "unknown error";
}

}  // namespace pdl
