#include "hexflow/topology.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace hexflow {

namespace {

int derive_n_boundaries(const std::vector<std::array<int, 3>>& faces, int n_boundaries) {
  int max_id = -1;
  for (const auto& f : faces)
    for (int c : f) max_id = std::max(max_id, c);
  if (n_boundaries < 0) return max_id + 1;
  if (max_id >= n_boundaries)
    throw Error(ErrorKind::BadInput,
                "corner id " + std::to_string(max_id) + " outside [0, " +
                    std::to_string(n_boundaries) + ")");
  return n_boundaries;
}

void check_face_corners(const std::array<int, 3>& f, int face_id) {
  if (f[0] < 0 || f[1] < 0 || f[2] < 0)
    throw Error(ErrorKind::BadInput, "face " + std::to_string(face_id) + " has a negative corner id");
  if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
    throw Error(ErrorKind::RepeatedCorner,
                "face " + std::to_string(face_id) + " repeats a boundary component");
}

void finish(IdealTriangulation& tri) {
  tri.corner_index.assign(tri.n_boundaries, {});
  for (int f = 0; f < static_cast<int>(tri.faces.size()); ++f)
    for (int s = 0; s < 3; ++s) tri.corner_index[tri.faces[f].corners[s]].push_back({f, s});
  for (int i = 0; i < tri.n_boundaries; ++i)
    if (tri.corner_index[i].empty())
      throw Error(ErrorKind::BadInput,
                  "boundary " + std::to_string(i) + " has no incident faces");
  if (tri.euler_char() - tri.n_boundaries >= 0)
    throw Error(ErrorKind::NotHyperbolic,
                "chi - N = " + std::to_string(tri.euler_char() - tri.n_boundaries) +
                    " >= 0; the surface admits no hyperbolic structure");
}

}  // namespace

IdealTriangulation build_triangulation(const std::vector<std::array<int, 3>>& faces,
                                       int n_boundaries) {
  IdealTriangulation tri;
  tri.n_boundaries = derive_n_boundaries(faces, n_boundaries);

  // Ordered map gives lexicographic edge ids independent of face order.
  std::map<std::array<int, 2>, int> uses;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    check_face_corners(faces[f], f);
    for (int s = 0; s < 3; ++s) {
      int a = faces[f][s], b = faces[f][(s + 1) % 3];
      uses[{std::min(a, b), std::max(a, b)}] += 1;
    }
  }
  std::map<std::array<int, 2>, int> edge_id;
  for (const auto& [ends, count] : uses) {
    if (count != 2)
      throw Error(ErrorKind::NonManifold,
                  "edge (" + std::to_string(ends[0]) + "," + std::to_string(ends[1]) +
                      ") borders " + std::to_string(count) + " faces, expected 2");
    int id = static_cast<int>(tri.edges.size());
    edge_id[ends] = id;
    tri.edges.push_back({ends});
  }

  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    HexFace face;
    face.corners = faces[f];
    for (int t = 0; t < 3; ++t) {
      int a = faces[f][(t + 1) % 3], b = faces[f][(t + 2) % 3];
      face.opposite_edge[t] = edge_id.at({std::min(a, b), std::max(a, b)});
    }
    tri.faces.push_back(face);
  }

  finish(tri);
  return tri;
}

IdealTriangulation build_triangulation(const std::vector<std::array<int, 3>>& face_corners,
                                       const std::vector<std::array<int, 3>>& face_edges,
                                       const std::vector<std::array<int, 2>>& edge_ends,
                                       int n_boundaries) {
  if (face_corners.size() != face_edges.size())
    throw Error(ErrorKind::BadInput, "face_corners and face_edges differ in length");

  IdealTriangulation tri;
  tri.n_boundaries = derive_n_boundaries(face_corners, n_boundaries);

  for (int e = 0; e < static_cast<int>(edge_ends.size()); ++e) {
    auto ends = edge_ends[e];
    if (ends[0] == ends[1])
      throw Error(ErrorKind::BadInput, "edge " + std::to_string(e) + " joins a boundary to itself");
    if (ends[0] < 0 || ends[1] < 0 || std::max(ends[0], ends[1]) >= tri.n_boundaries)
      throw Error(ErrorKind::BadInput, "edge " + std::to_string(e) + " has an out-of-range end");
    tri.edges.push_back({{std::min(ends[0], ends[1]), std::max(ends[0], ends[1])}});
  }

  std::vector<int> uses(tri.edges.size(), 0);
  for (int f = 0; f < static_cast<int>(face_corners.size()); ++f) {
    check_face_corners(face_corners[f], f);
    HexFace face;
    face.corners = face_corners[f];
    for (int s = 0; s < 3; ++s) {
      int e = face_edges[f][s];
      if (e < 0 || e >= static_cast<int>(tri.edges.size()))
        throw Error(ErrorKind::BadInput,
                    "face " + std::to_string(f) + " references unknown edge " + std::to_string(e));
      int a = face_corners[f][s], b = face_corners[f][(s + 1) % 3];
      std::array<int, 2> want = {std::min(a, b), std::max(a, b)};
      if (tri.edges[e].ends != want)
        throw Error(ErrorKind::BadInput,
                    "face " + std::to_string(f) + " slot " + std::to_string(s) + ": edge " +
                        std::to_string(e) + " does not join corners (" + std::to_string(a) +
                        "," + std::to_string(b) + ")");
      uses[e] += 1;
      // face_edges[s] joins corners (s, s+1); the edge opposite corner t joins
      // corners (t+1, t+2), which is slot (t+1) mod 3.
      face.opposite_edge[(s + 2) % 3] = e;
    }
    tri.faces.push_back(face);
  }

  for (int e = 0; e < static_cast<int>(tri.edges.size()); ++e)
    if (uses[e] != 2)
      throw Error(ErrorKind::NonManifold,
                  "edge " + std::to_string(e) + " borders " + std::to_string(uses[e]) +
                      " faces, expected 2");

  finish(tri);
  return tri;
}

const std::vector<Corner>& corners_at(const IdealTriangulation& tri, int i) {
  if (i < 0 || i >= tri.n_boundaries)
    throw Error(ErrorKind::BadInput, "boundary id " + std::to_string(i) + " out of range");
  return tri.corner_index[i];
}

}  // namespace hexflow
