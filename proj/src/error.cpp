#include "skewspec/error.hpp"

namespace skewspec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotLeoWithinCap: return "NotLeoWithinCap";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorKind::NotPeriodic: return "NotPeriodic";
    case ErrorKind::NotExpanding: return "NotExpanding";
    case ErrorKind::NoTrigger: return "NoTrigger";
    case ErrorKind::NoAnchorFound: return "NoAnchorFound";
    case ErrorKind::TargetNotCovered: return "TargetNotCovered";
    case ErrorKind::InternalContradiction: return "InternalContradiction";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace skewspec
