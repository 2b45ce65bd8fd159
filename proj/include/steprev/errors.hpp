#pragma once

#include <stdexcept>
#include <string>

namespace steprev {

enum class ErrorCode {
  OverlappingSupports,
  UnknownAction,
  UnknownState,
  UnknownPlace,
  DisconnectedSystem,
  ForwardDeterminismViolated,
  NotEnabled,
  StepBoundExceeded,
  StateBoundExceeded,
  StateCountMismatch,
  NotCest,
  NotAHomeCover,
  NotASetSystem,
  NoHomeState,
  NotAReverseNet,
  IncompletePairing,
  PreconditionFailed,
  VerificationFailed,
  CapExceeded,
  SchemaError,
  InvalidNet,
};

const char* to_string(ErrorCode code);

/// Library-wide exception carrying a machine-checkable code plus detail text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace steprev
