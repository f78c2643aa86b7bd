#pragma once

#include <array>

#include "hexflow/schemes.hpp"

namespace hexflow {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Right-angled hyperbolic hexagon: alternating sides are the ideal-edge
// lengths (l_i, l_j, l_k) and the boundary arcs (theta_i, theta_j, theta_k),
// theta_t opposite l_t. The defining law is
//   cosh theta_i = (cosh l_i + cosh l_j cosh l_k) / (sinh l_j sinh l_k).
std::array<double, 3> angles_from_lengths(double l_i, double l_j, double l_k);

// A = sqrt(cosh^2 l_i + cosh^2 l_j + cosh^2 l_k + 2 cosh l_i cosh l_j cosh l_k - 1)
//   = sinh l_r sinh l_s sinh theta_t for every permutation; always > 2.
double a_quantity(double l_i, double l_j, double l_k);

// cosh-native entry points used by the curvature pipeline, skipping the
// l -> cosh round trip.
struct FaceAngles {
  std::array<double, 3> theta{}, cosh_theta{};
  double a = 0.0;
};
FaceAngles angles_from_cosh(const std::array<double, 3>& cosh_l,
                            const std::array<double, 3>& sinh_l);

// Everything the curvature assembly needs from one face at given corner
// f-values (in face corner order). Throws NotAdmissible naming the edge.
struct FaceEval {
  std::array<double, 3> cosh_l{}, sinh_l{}, l{}, theta{};
  double a = 0.0;
  Mat3 jacobian{};  // d(theta_i,theta_j,theta_k)/d(u_i,u_j,u_k), filled on request
};
FaceEval evaluate_face(const IdealTriangulation& tri, const Scheme& scheme, int face,
                       const std::array<double, 3>& f, bool want_jacobian);

// The 3x3 corner Jacobian in the scheme's u-charts; symmetric for every
// correctly charted scheme.
Mat3 corner_jacobian(const IdealTriangulation& tri, const Scheme& scheme, int face,
                     const std::array<double, 3>& f);

}  // namespace hexflow
