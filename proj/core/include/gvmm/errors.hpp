#pragma once

#include <stdexcept>
#include <string>

namespace gvmm {

enum class ErrorCode {
  ConstraintViolation,
  TagMismatch,
  OutOfInjectivityRadius,
  SingularPairing,
  InsufficientSamples,
  ChartBoundary,
  IntegratorDiverged,
  PreconditionFailed,
  AdjointMismatch,
  DegreeOverflow,
  DegreeMismatch,
  SkewSymmetryViolated,
  CocycleLawViolated,
  SingularInput,
  ZeroElement,
  NotPrequantizable,
  NotPositiveDefinite,
  NotInLevelSet,
  NoSolution,
  StepTooLarge,
  LayoutMismatch,
  DimensionMismatch,
  ShapeMismatch,
  NotClosedNu,
  NonRealOutput,
  UnknownExperiment,
  ConfigInvalid,
  IoError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gvmm
