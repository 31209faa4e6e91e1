#include "gvmm/errors.hpp"

namespace gvmm {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::OutOfInjectivityRadius: return "OutOfInjectivityRadius";
    case ErrorCode::SingularPairing: return "SingularPairing";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::ChartBoundary: return "ChartBoundary";
    case ErrorCode::IntegratorDiverged: return "IntegratorDiverged";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::AdjointMismatch: return "AdjointMismatch";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::SkewSymmetryViolated: return "SkewSymmetryViolated";
    case ErrorCode::CocycleLawViolated: return "CocycleLawViolated";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotPrequantizable: return "NotPrequantizable";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotInLevelSet: return "NotInLevelSet";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::LayoutMismatch: return "LayoutMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotClosedNu: return "NotClosedNu";
    case ErrorCode::NonRealOutput: return "NonRealOutput";
    case ErrorCode::UnknownExperiment: return "UnknownExperiment";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gvmm
