#pragma once

#include <string>
#include <vector>

#include "hexflow/hexagon.hpp"
#include "hexflow/numerics.hpp"

namespace hexflow {

// Coordinate views. f_view throws DomainError when some u_i is outside its
// chart domain.
std::vector<double> f_view(const Scheme& scheme, const std::vector<double>& u);
std::vector<double> u_view(const Scheme& scheme, const std::vector<double>& f);

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<int> bad_boundaries;           // u outside its chart domain
  std::vector<int> bad_edges;                // cosh l <= 1
  std::vector<std::string> violations;       // one line per finding
};
AdmissibilityReport check_admissible(const IdealTriangulation& tri, const Scheme& scheme,
                                     const std::vector<double>& u);

// K_i = sum of the corner arcs theta_i over corners_at(i), in ascending face
// order. Input is in u-coordinates; the _from_f variant skips the chart map.
std::vector<double> curvature_K(const IdealTriangulation& tri, const Scheme& scheme,
                                const std::vector<double>& u);
std::vector<double> curvature_K_from_f(const IdealTriangulation& tri, const Scheme& scheme,
                                       const std::vector<double>& f);

// One pass over all faces: curvature, optional Laplacian dK/du, and the edge
// length minimum. The Laplacian is assembled symmetrized (off-diagonal entries
// average the two corner contributions); the relative asymmetry before
// symmetrization is reported and must stay below 1e-6 or the evaluation
// throws NumericalInconsistency.
struct SurfaceEval {
  std::vector<double> k;
  double min_edge_length = 0.0;
  num::SparseSymMatrix laplacian;
  double asymmetry = 0.0;
};
SurfaceEval evaluate_surface(const IdealTriangulation& tri, const Scheme& scheme,
                             const std::vector<double>& u, bool want_laplacian);

num::SparseSymMatrix laplacian(const IdealTriangulation& tri, const Scheme& scheme,
                               const std::vector<double>& u);

// E contribution of moving straight from ua to ub:
//   -integral_0^1 sum_i (K_i(ua + t (ub-ua)) - kbar_i) (ub_i - ua_i) dt
// by composite 16-node Gauss-Legendre quadrature, subdividing until two
// refinements agree to 1e-10 relative. Throws PathLeavesAdmissible when a
// quadrature node is inadmissible, QuadratureNoConvergence past 256 panels.
double energy_segment(const IdealTriangulation& tri, const Scheme& scheme,
                      const std::vector<double>& ua, const std::vector<double>& ub,
                      const std::vector<double>& kbar);

// E(u) anchored at u_ref, i.e. energy_segment(u_ref, u).
double energy_E(const IdealTriangulation& tri, const Scheme& scheme,
                const std::vector<double>& u_ref, const std::vector<double>& u,
                const std::vector<double>& kbar);

// C(u) = 1/2 sum_i (K_i - kbar_i)^2.
double energy_C(const IdealTriangulation& tri, const Scheme& scheme,
                const std::vector<double>& u, const std::vector<double>& kbar);

}  // namespace hexflow
