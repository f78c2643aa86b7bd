#pragma once

#include <array>
#include <vector>

#include "hexflow/errors.hpp"

namespace hexflow {

// An ideal edge joins two distinct boundary components. Ends are stored in
// ascending order; edge ids are deterministic (see build_triangulation).
struct IdealEdge {
  std::array<int, 2> ends{};
};

// A hexagonal face meets three pairwise distinct boundary components.
// opposite_edge[t] is the id of the edge joining the two corners other than
// corners[t], matching the (l_i, l_j, l_k) opposite-side convention.
struct HexFace {
  std::array<int, 3> corners{};
  std::array<int, 3> opposite_edge{};
};

struct Corner {
  int face = 0;
  int slot = 0;  // 0..2 within the face
};

struct IdealTriangulation {
  int n_boundaries = 0;
  std::vector<IdealEdge> edges;
  std::vector<HexFace> faces;
  // corner_index[i] lists all (face, slot) with faces[face].corners[slot] == i,
  // sorted by (face, slot).
  std::vector<std::vector<Corner>> corner_index;

  // Euler characteristic N - |E| + |F| of the underlying closed surface.
  int euler_char() const {
    return n_boundaries - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
  }
};

// Builds a triangulation from corner triples; edges are derived from corner
// pairs and every unordered pair must occur in exactly 0 or 2 faces. Edge ids
// are assigned in lexicographic order of the endpoint pair. n_boundaries < 0
// means "derive from the largest corner id".
IdealTriangulation build_triangulation(const std::vector<std::array<int, 3>>& faces,
                                       int n_boundaries = -1);

// Explicit-edge form for surfaces where a boundary pair is joined by more than
// one edge. face_edges[f] lists the edge ids joining corners (0,1), (1,2),
// (2,0) of face f, in that order; every edge must border exactly two faces.
IdealTriangulation build_triangulation(const std::vector<std::array<int, 3>>& face_corners,
                                       const std::vector<std::array<int, 3>>& face_edges,
                                       const std::vector<std::array<int, 2>>& edge_ends,
                                       int n_boundaries = -1);

const std::vector<Corner>& corners_at(const IdealTriangulation& tri, int i);

}  // namespace hexflow
