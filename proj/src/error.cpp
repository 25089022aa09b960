#include "padicint/error.hpp"

namespace padicint {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::UndefinedAtPoint: return "UndefinedAtPoint";
    case ErrorKind::InfiniteMeasure: return "InfiniteMeasure";
    case ErrorKind::DivergentSum: return "DivergentSum";
    case ErrorKind::NotFiberReducible: return "NotFiberReducible";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace padicint
