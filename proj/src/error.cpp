#include "urn/error.hpp"

namespace urn {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParamDomain: return "ParamDomain";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::Absorbed: return "Absorbed";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::HorizonZero: return "HorizonZero";
    case ErrorKind::EventBudgetExceeded: return "EventBudgetExceeded";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::InsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

UrnError::UrnError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace urn
