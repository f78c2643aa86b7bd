#include "hexflow/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace hexflow {

std::vector<double> f_view(const Scheme& scheme, const std::vector<double>& u) {
  std::vector<double> f(u.size());
  for (int i = 0; i < static_cast<int>(u.size()); ++i) f[i] = scheme.f_from_u(i, u[i]);
  return f;
}

std::vector<double> u_view(const Scheme& scheme, const std::vector<double>& f) {
  std::vector<double> u(f.size());
  for (int i = 0; i < static_cast<int>(f.size()); ++i) u[i] = scheme.u_from_f(i, f[i]);
  return u;
}

AdmissibilityReport check_admissible(const IdealTriangulation& tri, const Scheme& scheme,
                                     const std::vector<double>& u) {
  AdmissibilityReport rep;
  if (static_cast<int>(u.size()) != tri.n_boundaries) {
    rep.admissible = false;
    rep.violations.push_back("factor vector has " + std::to_string(u.size()) +
                             " entries, expected " + std::to_string(tri.n_boundaries));
    return rep;
  }
  for (int i = 0; i < tri.n_boundaries; ++i) {
    if (!scheme.domain_of_u(i).contains(u[i])) {
      rep.admissible = false;
      rep.bad_boundaries.push_back(i);
      rep.violations.push_back("boundary " + std::to_string(i) + ": u = " +
                               std::to_string(u[i]) + " outside its chart domain");
    }
  }
  if (!rep.admissible) return rep;

  std::vector<double> f = f_view(scheme, u);
  for (int e = 0; e < static_cast<int>(tri.edges.size()); ++e) {
    auto [a, b] = tri.edges[e].ends;
    auto ev = scheme.edge_eval(e, f[a], f[b]);
    if (!ev.admissible) {
      rep.admissible = false;
      rep.bad_edges.push_back(e);
      rep.violations.push_back("edge " + std::to_string(e) + " (" + std::to_string(a) + "," +
                               std::to_string(b) + "): cosh l = " + std::to_string(ev.cosh_l) +
                               " <= 1");
    }
  }
  return rep;
}

std::vector<double> curvature_K_from_f(const IdealTriangulation& tri, const Scheme& scheme,
                                       const std::vector<double>& f) {
  std::vector<double> k(tri.n_boundaries, 0.0);
  for (int face = 0; face < static_cast<int>(tri.faces.size()); ++face) {
    std::array<double, 3> ff;
    for (int s = 0; s < 3; ++s) ff[s] = f[tri.faces[face].corners[s]];
    FaceEval ev = evaluate_face(tri, scheme, face, ff, false);
    for (int s = 0; s < 3; ++s) k[tri.faces[face].corners[s]] += ev.theta[s];
  }
  return k;
}

std::vector<double> curvature_K(const IdealTriangulation& tri, const Scheme& scheme,
                                const std::vector<double>& u) {
  return curvature_K_from_f(tri, scheme, f_view(scheme, u));
}

SurfaceEval evaluate_surface(const IdealTriangulation& tri, const Scheme& scheme,
                             const std::vector<double>& u, bool want_laplacian) {
  SurfaceEval out;
  out.k.assign(tri.n_boundaries, 0.0);
  out.min_edge_length = std::numeric_limits<double>::infinity();
  std::vector<double> f = f_view(scheme, u);

  // Off-diagonal contributions kept per orientation to expose the asymmetry
  // of the raw assembly before averaging.
  std::map<std::pair<int, int>, double> upper, lower;
  if (want_laplacian) out.laplacian = num::SparseSymMatrix(tri.n_boundaries);

  for (int face = 0; face < static_cast<int>(tri.faces.size()); ++face) {
    const auto& corners = tri.faces[face].corners;
    std::array<double, 3> ff;
    for (int s = 0; s < 3; ++s) ff[s] = f[corners[s]];
    FaceEval ev = evaluate_face(tri, scheme, face, ff, want_laplacian);
    for (int s = 0; s < 3; ++s) {
      out.k[corners[s]] += ev.theta[s];
      out.min_edge_length = std::min(out.min_edge_length, ev.l[s]);
    }
    if (!want_laplacian) continue;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        int i = corners[r], j = corners[c];
        if (r == c) {
          out.laplacian.add(i, i, ev.jacobian[r][c]);
        } else if (i < j) {
          upper[{i, j}] += ev.jacobian[r][c];
        } else {
          lower[{j, i}] += ev.jacobian[r][c];
        }
      }
  }

  if (want_laplacian) {
    double max_diff = 0.0, scale = 0.0;
    for (const auto& [key, v] : out.laplacian.entries) scale = std::max(scale, std::abs(v));
    for (auto& [key, up] : upper) {
      double lo = lower[key];
      max_diff = std::max(max_diff, std::abs(up - lo));
      double avg = 0.5 * (up + lo);
      scale = std::max(scale, std::abs(avg));
      out.laplacian.set(key.first, key.second, avg);
    }
    out.asymmetry = scale > 0.0 ? max_diff / scale : 0.0;
    if (out.asymmetry > 1e-6)
      throw Error(ErrorKind::NumericalInconsistency,
                  "Laplacian asymmetry " + std::to_string(out.asymmetry) +
                      " exceeds 1e-6; the chart does not symmetrize this scheme");
  }
  return out;
}

num::SparseSymMatrix laplacian(const IdealTriangulation& tri, const Scheme& scheme,
                               const std::vector<double>& u) {
  return evaluate_surface(tri, scheme, u, true).laplacian;
}

namespace {

double segment_integrand(const IdealTriangulation& tri, const Scheme& scheme,
                         const std::vector<double>& ua, const std::vector<double>& d,
                         const std::vector<double>& kbar, double t) {
  std::vector<double> u(ua.size());
  for (size_t i = 0; i < ua.size(); ++i) u[i] = ua[i] + t * d[i];
  std::vector<double> k;
  try {
    k = curvature_K(tri, scheme, u);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::NotAdmissible || err.kind() == ErrorKind::DomainError)
      throw Error(ErrorKind::PathLeavesAdmissible,
                  "segment leaves the admissible region at t = " + std::to_string(t) + " (" +
                      err.what() + ")");
    throw;
  }
  double g = 0.0;
  for (size_t i = 0; i < ua.size(); ++i) g += (k[i] - kbar[i]) * d[i];
  return g;
}

}  // namespace

double energy_segment(const IdealTriangulation& tri, const Scheme& scheme,
                      const std::vector<double>& ua, const std::vector<double>& ub,
                      const std::vector<double>& kbar) {
  std::vector<double> d(ua.size());
  bool moved = false;
  for (size_t i = 0; i < ua.size(); ++i) {
    d[i] = ub[i] - ua[i];
    moved = moved || d[i] != 0.0;
  }
  if (!moved) return 0.0;

  const auto& rule = num::gauss16();
  double prev = 0.0;
  for (int panels = 1; panels <= 256; panels *= 2) {
    double sum = 0.0;
    for (int s = 0; s < panels; ++s)
      for (int q = 0; q < 16; ++q) {
        double t = (s + rule.x[q]) / panels;
        sum += rule.w[q] * segment_integrand(tri, scheme, ua, d, kbar, t);
      }
    sum /= panels;
    if (panels > 1 && std::abs(sum - prev) <= 1e-10 * std::max(1.0, std::abs(sum))) return -sum;
    prev = sum;
  }
  throw Error(ErrorKind::QuadratureNoConvergence,
              "energy segment quadrature did not settle within 256 panels");
}

double energy_E(const IdealTriangulation& tri, const Scheme& scheme,
                const std::vector<double>& u_ref, const std::vector<double>& u,
                const std::vector<double>& kbar) {
  return energy_segment(tri, scheme, u_ref, u, kbar);
}

double energy_C(const IdealTriangulation& tri, const Scheme& scheme,
                const std::vector<double>& u, const std::vector<double>& kbar) {
  std::vector<double> k = curvature_K(tri, scheme, u);
  double c = 0.0;
  for (size_t i = 0; i < k.size(); ++i) c += (k[i] - kbar[i]) * (k[i] - kbar[i]);
  return 0.5 * c;
}

}  // namespace hexflow
