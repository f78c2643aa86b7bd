#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hexflow/curvature.hpp"

namespace hexflow {

enum class FlowMethod { Ricci, Calabi, Newton };
enum class FlowOutcome { Converged, MaxSteps, LeftAdmissible };

const char* to_string(FlowMethod m);
const char* to_string(FlowOutcome o);
std::optional<FlowMethod> flow_method_from_string(std::string_view name);

struct SolverConfig {
  FlowMethod method = FlowMethod::Ricci;
  double tol = 1e-10;      // on the residual ||K - kbar||_inf
  double dt0 = 0.1;        // initial step (flows); cap is 10 dt0
  long max_steps = 100000; // accepted steps / Newton iterations
  double shrink = 0.5;     // backtracking factor, in (0, 1)
  double grow = 1.2;       // step growth after an accepted step, > 1
  double cg_tol = 1e-12;   // Newton linear-solve relative residual
};

struct TraceRow {
  long step = 0;
  double t = 0.0, dt = 0.0, residual = 0.0, energy_e = 0.0, energy_c = 0.0;
  std::vector<double> u;
};

struct FlowResult {
  FlowOutcome outcome = FlowOutcome::MaxSteps;
  std::vector<double> u_final, k_final;
  double residual = 0.0;
  long steps = 0;
  double wall_seconds = 0.0;
  std::vector<TraceRow> trace;
  double min_edge_length = 0.0;  // at the final state
  double min_abs_u = 0.0;        // smallest |u_i| over accepted states
  bool near_zero_warning = false;  // min_abs_u dropped below 1e-8
};

// Runs the configured solver from an admissible u0 (throws NotAdmissible
// otherwise; throws Unsupported for evaluation-only schemes; kbar must be
// strictly positive). Flows integrate with classical Runge-Kutta; every
// tentative step is re-tried at dt * shrink until the new state is admissible
// and E and C have not increased beyond 1e-13; accepted steps grow dt by
// `grow` up to 10 dt0. Newton solves (-Laplacian) delta = K - kbar by CG and
// backtracks lambda on inadmissibility or E increase. Non-convergence is the
// MaxSteps outcome, not an error.
FlowResult run_solver(const IdealTriangulation& tri, const Scheme& scheme,
                      const std::vector<double>& u0, const std::vector<double>& kbar,
                      const SolverConfig& cfg);

// Rejection-samples an admissible factor vector inside a per-boundary box
// derived from the chart domains (documented seed => reproducible runs).
std::vector<double> random_admissible_start(const IdealTriangulation& tri, const Scheme& scheme,
                                            std::uint64_t seed);

// Perturbs u_star by an admissible random vector of the given norm, runs the
// chosen flow toward kbar = K(u_star), and reports whether it re-converged to
// u_star within 1e-8 coordinate-wise.
bool local_basin_check(const IdealTriangulation& tri, const Scheme& scheme,
                       const std::vector<double>& u_star, double perturbation_size,
                       FlowMethod method, std::uint64_t seed, const SolverConfig& base);

}  // namespace hexflow
