#include "hexflow/hexagon.hpp"

#include <cmath>
#include <string>

#include "hexflow/numerics.hpp"

namespace hexflow {

namespace {

void check_positive_lengths(double l_i, double l_j, double l_k) {
  if (!(l_i > 0.0) || !(l_j > 0.0) || !(l_k > 0.0))
    throw Error(ErrorKind::DomainError, "hexagon side lengths must be positive");
}

}  // namespace

FaceAngles angles_from_cosh(const std::array<double, 3>& cosh_l,
                            const std::array<double, 3>& sinh_l) {
  FaceAngles out;
  for (int t = 0; t < 3; ++t) {
    int u = (t + 1) % 3, v = (t + 2) % 3;
    out.cosh_theta[t] = (cosh_l[t] + cosh_l[u] * cosh_l[v]) / (sinh_l[u] * sinh_l[v]);
    out.theta[t] = num::arccosh(out.cosh_theta[t]);
  }
  out.a = std::sqrt(cosh_l[0] * cosh_l[0] + cosh_l[1] * cosh_l[1] + cosh_l[2] * cosh_l[2] +
                    2.0 * cosh_l[0] * cosh_l[1] * cosh_l[2] - 1.0);
  return out;
}

std::array<double, 3> angles_from_lengths(double l_i, double l_j, double l_k) {
  check_positive_lengths(l_i, l_j, l_k);
  std::array<double, 3> ch = {std::cosh(l_i), std::cosh(l_j), std::cosh(l_k)};
  std::array<double, 3> sh = {std::sinh(l_i), std::sinh(l_j), std::sinh(l_k)};
  return angles_from_cosh(ch, sh).theta;
}

double a_quantity(double l_i, double l_j, double l_k) {
  check_positive_lengths(l_i, l_j, l_k);
  std::array<double, 3> ch = {std::cosh(l_i), std::cosh(l_j), std::cosh(l_k)};
  return std::sqrt(ch[0] * ch[0] + ch[1] * ch[1] + ch[2] * ch[2] +
                   2.0 * ch[0] * ch[1] * ch[2] - 1.0);
}

FaceEval evaluate_face(const IdealTriangulation& tri, const Scheme& scheme, int face,
                       const std::array<double, 3>& f, bool want_jacobian) {
  const HexFace& hf = tri.faces[face];
  FaceEval out;

  // Slot of each edge end within the face, so scheme calls see end order.
  std::array<std::array<int, 2>, 3> end_slot{};
  for (int t = 0; t < 3; ++t) {
    int e = hf.opposite_edge[t];
    int p = (t + 1) % 3, q = (t + 2) % 3;
    const auto& ends = tri.edges[e].ends;
    end_slot[t] = hf.corners[p] == ends[0] ? std::array<int, 2>{p, q} : std::array<int, 2>{q, p};
    auto ev = scheme.edge_eval(e, f[end_slot[t][0]], f[end_slot[t][1]]);
    if (!ev.admissible)
      throw Error(ErrorKind::NotAdmissible,
                  "face " + std::to_string(face) + ", edge " + std::to_string(e) + " (" +
                      std::to_string(ends[0]) + "," + std::to_string(ends[1]) +
                      ") degenerates: cosh l = " + std::to_string(ev.cosh_l) + " <= 1");
    out.cosh_l[t] = ev.cosh_l;
    out.sinh_l[t] = ev.sinh_l;
    out.l[t] = ev.l;
  }

  FaceAngles ang = angles_from_cosh(out.cosh_l, out.sinh_l);
  out.theta = ang.theta;
  out.a = ang.a;
  if (!want_jacobian) return out;

  // d theta / d u = -(1/A) diag(sinh l) M CothD diag(df/du), with
  // M = [[-1, ch th_k, ch th_j], [ch th_k, -1, ch th_i], [ch th_j, ch th_i, -1]]
  // and CothD[t][a] = d l_t / d f_a.
  Mat3 m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      m[r][c] = r == c ? -1.0 : ang.cosh_theta[3 - r - c];

  Mat3 coth{};
  for (int t = 0; t < 3; ++t) {
    int e = hf.opposite_edge[t];
    double fa = f[end_slot[t][0]], fb = f[end_slot[t][1]];
    coth[t][end_slot[t][0]] =
        scheme.coth_d_from_cosh(e, 0, fa, fb, out.cosh_l[t], out.sinh_l[t]);
    coth[t][end_slot[t][1]] =
        scheme.coth_d_from_cosh(e, 1, fa, fb, out.cosh_l[t], out.sinh_l[t]);
  }

  std::array<double, 3> dfdu{};
  for (int c = 0; c < 3; ++c) dfdu[c] = scheme.dfdu(hf.corners[c], f[c]);

  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[r][k] * coth[k][c];
      out.jacobian[r][c] = -(out.sinh_l[r] / out.a) * s * dfdu[c];
    }
  return out;
}

Mat3 corner_jacobian(const IdealTriangulation& tri, const Scheme& scheme, int face,
                     const std::array<double, 3>& f) {
  return evaluate_face(tri, scheme, face, f, true).jacobian;
}

}  // namespace hexflow
