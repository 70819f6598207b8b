#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace urn {

enum class ErrorKind {
  ParamDomain,
  Domain,
  Absorbed,
  OrderViolation,
  HorizonZero,
  EventBudgetExceeded,
  EmptySample,
  SizeMismatch,
  InsufficientData,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every precondition failure in the library surfaces as an UrnError whose
/// kind() names the contract that was broken.
class UrnError : public std::runtime_error {
 public:
  UrnError(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace urn
