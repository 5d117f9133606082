#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radfact {

enum class ErrorKind {
  ForeignElement,
  NotPrime,
  CapabilityMissing,
  ParseError,
  AxiomViolation,
  InvalidModulus,
  StepFailed,
  Stalled,
  HypothesisViolated,
  ZeroElement,
  NotMaximal,
  SpaceMismatch,
  EmptyFamily,
  BottomElement,
  UnsupportedTopology,
  InvalidGenerators,
  NotRadical,
  TooLarge,
  EmptyRegularCarrier,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace radfact
