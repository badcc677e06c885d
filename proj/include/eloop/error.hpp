#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eloop {

enum class ErrorKind {
  InvalidConfig,
  ConfigMismatch,
  NonUnit,
  NotPrimitive,
  NotOnLoop,
  SingularCurve,
  EvenOrder,
  DegenerateSum,
  HessianNotUnit,
  NilpotencyTooHigh,
  PreconditionUnmet,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NotOnLoop: return "NotOnLoop";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::EvenOrder: return "EvenOrder";
    case ErrorKind::DegenerateSum: return "DegenerateSum";
    case ErrorKind::HessianNotUnit: return "HessianNotUnit";
    case ErrorKind::NilpotencyTooHigh: return "NilpotencyTooHigh";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
  }
  return "Unknown";
}

/// Every library failure carries a machine-readable kind; the CLI prints it
/// verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eloop
