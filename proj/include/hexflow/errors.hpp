#pragma once

#include <stdexcept>
#include <string>

namespace hexflow {

enum class ErrorKind {
  NonManifold,             // an edge borders a number of faces != 2
  RepeatedCorner,          // a face with duplicate boundary ids
  NotHyperbolic,           // chi - N >= 0
  BadInput,                // configuration or document violates a stated constraint
  DomainError,             // argument outside a chart or formula domain
  NotAdmissible,           // some cosh l <= 1, or factors outside their domain
  PathLeavesAdmissible,    // integration segment exits the admissible region
  QuadratureNoConvergence, // adaptive refinement exhausted
  LinearSolveFailure,      // CG stagnation or non-SPD matrix
  NoConvergence,           // iterative eigenvalue / sampling budget exhausted
  Unsupported,             // configuration valid for evaluation but not for solving
  NumericalInconsistency,  // internal self-check failed (e.g. Laplacian asymmetry)
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hexflow
