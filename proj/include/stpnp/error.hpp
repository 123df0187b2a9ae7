#pragma once

#include <stdexcept>
#include <string>

namespace stpnp {

enum class ErrorKind {
  InvalidInput,
  Parse,
  Topology,
  UnsupportedDegree,
  SingularElement,
  PositivityViolation,
  InvalidBoundaryData,
  DivergedState,
  SingularMatrix,
  NewtonFailure,
  StepFailure,
  UnknownPreset,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception carrying a machine-checkable category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stpnp
