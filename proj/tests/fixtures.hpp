#pragma once

#include <array>
#include <vector>

#include "hexflow/schemes.hpp"
#include "hexflow/topology.hpp"

// Shared fixtures and pinned expected values. The numeric constants were
// frozen from an independent prototype before the library was written; tests
// compare against them, never against the library's own output.
namespace fx {

using hexflow::EdgeVariant;
using hexflow::IdealTriangulation;
using hexflow::Scheme;
using hexflow::SchemeConfig;
using hexflow::SchemeKind;

inline std::vector<std::array<int, 3>> tetra_faces() {
  return {{{0, 1, 2}}, {{0, 1, 3}}, {{0, 2, 3}}, {{1, 2, 3}}};
}

inline IdealTriangulation tetra() { return hexflow::build_triangulation(tetra_faces(), 4); }

// Three boundaries, each pair joined by two distinct edges; needs explicit
// edge identity in the face records.
inline IdealTriangulation theta3() {
  std::vector<std::array<int, 3>> corners(4, {{0, 1, 2}});
  // edge ids: 0,1 join (0,1); 2,3 join (0,2); 4,5 join (1,2)
  std::vector<std::array<int, 3>> face_edges = {{{0, 4, 2}}, {{0, 5, 3}}, {{1, 4, 3}}, {{1, 5, 2}}};
  std::vector<std::array<int, 2>> ends = {{{0, 1}}, {{0, 1}}, {{0, 2}}, {{0, 2}}, {{1, 2}}, {{1, 2}}};
  return hexflow::build_triangulation(corners, face_edges, ends, 3);
}

inline SchemeConfig uniform_config(SchemeKind kind, int n_boundaries, int n_edges, double eta) {
  SchemeConfig c;
  c.kind = kind;
  c.alpha.assign(n_boundaries, 0);
  c.eta.assign(n_edges, eta);
  c.variant.assign(n_edges, EdgeVariant::Plus);
  return c;
}

// Minus on every edge incident to boundary 0: sign classes {0} | {rest}.
inline void minus_around_zero(const IdealTriangulation& tri, SchemeConfig& c) {
  for (size_t e = 0; e < tri.edges.size(); ++e)
    if (tri.edges[e].ends[0] == 0) c.variant[e] = EdgeVariant::Minus;
}

inline Scheme tetra_scheme(SchemeKind kind, double eta, int alpha = 0, bool mixed_zero = false) {
  IdealTriangulation tri = tetra();
  SchemeConfig c = uniform_config(kind, 4, 6, eta);
  for (int& a : c.alpha) a = alpha;
  if (mixed_zero) minus_around_zero(tri, c);
  return Scheme::build(tri, c);
}

// ---- pinned values ----
inline constexpr double kAcosh2 = 1.3169578969248166;
inline constexpr double kAcosh3 = 1.7627471740390861;

// tetra, exponential family, eta = 3, u = -1 everywhere
inline constexpr double kTetraExpK = 3.9508736907744497;        // 3 arccosh 2
inline constexpr double kTetraExpEigLow = -10.392304845413264;  // -6 sqrt 3
inline constexpr double kTetraExpEigHigh = -5.773502691896258;  // -10/sqrt 3, x3
inline constexpr double kTetraExpJDiag = -2.309401076758503;    // -4/sqrt 3
inline constexpr double kTetraExpJOff = -0.5773502691896258;    // -1/sqrt 3

// tetra, hyperbolic alpha = 0 (product term drops), eta = 2, f = 0.5
inline constexpr double kTetraGuoK = 2.236472067793596;

// tetra, circular, eta = -0.5, f = 1
inline constexpr double kTetraCircK = 3.11708748830827;
inline constexpr double kTetraCircU = -0.376727508058575;

// tetra, hyperbolic alpha = 1, eta = 2, f = 0.6
inline constexpr double kTetraHypA1K = 3.492066439279079;
inline constexpr double kTetraHypA1U = -0.5244389234207603;

// mixed fixtures on the tetra, Minus on the three edges at boundary 0
inline constexpr double kMixedHypEta = 2.0;     // f* = 0.3 everywhere
inline constexpr double kMixedHypK0 = 1.760435845133839;
inline constexpr double kMixedHypK1 = 3.021551114680437;
inline constexpr double kMixedHypBadEig = 1.412809626420825;  // at the witness point

inline constexpr double kMixedCircEta = 1.5;    // f* = (0.1, 2.2, 2.2, 2.2)
inline constexpr double kMixedCircK0 = 5.045239418787687;
inline constexpr double kMixedCircK1 = 0.3725665268903368;
inline constexpr double kMixedCircU0 = 1.130997700858902;
inline constexpr double kMixedCircU1 = -0.1110311482274633;

inline constexpr double kMixedExpEta = 2.0;     // u* = (2.5, -0.4, -0.4, -0.4)
inline constexpr double kMixedExpK0 = 2.830399654407347;
inline constexpr double kMixedExpK1 = 1.370180499212521;
inline constexpr double kMixedExpF0 = -0.9162907318741551;
inline constexpr double kMixedExpF1 = 0.916290731874155;

// chart and kernel spot values
inline constexpr double kChartA1F0 = -0.8813735870195429;  // ln(sqrt 2 - 1)
inline constexpr double kCothDExpEq = 1.7320508075688772;  // sqrt 3 at cosh l = 2
inline constexpr double kCothDHypMix = 1.3106601717798212;  // (1 + 3 sqrt 2)/4

// energies, tetra exponential eta = 3, target 3 arccosh 2
inline constexpr double kEnergyLine = 0.5468340860294939;   // u* -> (-0.8,-1.3,-0.9,-1.1)
inline constexpr double kEnergyDetour = 0.5468340860294948; // same, via (-1.1,-0.8,-1.2,-0.9)
inline constexpr double kEnergyCAt4 = 0.004826788516248511; // C at u = -1, target 4

}  // namespace fx
