#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewspec {

enum class ErrorKind {
  ZeroDenominator,
  OutOfDomain,
  InvalidArgument,
  NotLeoWithinCap,
  NotPrimitive,
  NoPath,
  BudgetTooSmall,
  NotPeriodic,
  NotExpanding,
  NoTrigger,
  NoAnchorFound,
  TargetNotCovered,
  InternalContradiction,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace skewspec
