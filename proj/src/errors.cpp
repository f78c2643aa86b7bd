#include "hexflow/errors.hpp"

namespace hexflow {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::RepeatedCorner: return "RepeatedCorner";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::PathLeavesAdmissible: return "PathLeavesAdmissible";
    case ErrorKind::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorKind::LinearSolveFailure: return "LinearSolveFailure";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NumericalInconsistency: return "NumericalInconsistency";
  }
  return "UnknownError";
}

}  // namespace hexflow
