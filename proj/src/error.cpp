#include "radfact/error.hpp"

namespace radfact {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ForeignElement: return "ForeignElement";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::CapabilityMissing: return "CapabilityMissing";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::StepFailed: return "StepFailed";
    case ErrorKind::Stalled: return "Stalled";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::BottomElement: return "BottomElement";
    case ErrorKind::UnsupportedTopology: return "UnsupportedTopology";
    case ErrorKind::InvalidGenerators: return "InvalidGenerators";
    case ErrorKind::NotRadical: return "NotRadical";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptyRegularCarrier: return "EmptyRegularCarrier";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace radfact
