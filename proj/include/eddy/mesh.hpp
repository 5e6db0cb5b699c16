// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_MESH_HPP
#define EDDY_MESH_HPP

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>
#include <Eigen/Dense>

namespace eddy
{

using Vec3 = Eigen::Vector3d;

class MeshError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Local edge (a, b) of a tetrahedron, indexed by local vertex.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// A boundary triangle with its vertices ordered counterclockwise as seen from outside.
struct BoundaryFace
{
  int face;                    // Global face id.
  std::array<int, 3> vertices; // Outward oriented vertex order.
  std::array<int, 3> edges;    // Global edge id of edge i, opposite vertices[i].
};

// Geometric frame of a boundary edge with respect to its two boundary faces.
struct BoundaryEdgeFrame
{
  int edge;
  Vec3 tangent;                // Unit tangent, lower to higher global vertex id.
  std::array<Vec3, 2> normal;  // Outward unit normals of F+ and F-.
  std::array<Vec3, 2> in_plane; // tangent x normal on each side.
};

//
// Tetrahedral mesh with global edge/face numbering and the closed boundary surface.
// Immutable after construction.
//
class Mesh
{
public:
  Mesh() = default;

  // Builds topology from raw vertices and tetrahedra. Tets with negative signed volume
  // are repaired by swapping their last two vertices.
  Mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tets);

  int NumVertices() const { return static_cast<int>(vertices_.size()); }
  int NumTets() const { return static_cast<int>(tets_.size()); }
  int NumEdges() const { return static_cast<int>(edges_.size()); }
  int NumFaces() const { return static_cast<int>(faces_.size()); }
  int NumBoundaryFaces() const { return static_cast<int>(boundary_faces_.size()); }
  int NumBoundaryEdges() const { return static_cast<int>(boundary_edges_.size()); }
  int NumBoundaryVertices() const { return num_boundary_vertices_; }
  int OrientationFixes() const { return orientation_fixes_; }

  const std::vector<Vec3> &Vertices() const { return vertices_; }
  const Vec3 &Vertex(int v) const { return vertices_[v]; }
  const std::array<int, 4> &Tet(int t) const { return tets_[t]; }
  const std::vector<std::array<int, 4>> &Tets() const { return tets_; }
  const std::array<int, 2> &Edge(int e) const { return edges_[e]; }
  const std::array<int, 3> &Face(int f) const { return faces_[f]; }

  // Tet -> global edge ids (local order kTetEdges) and the sign of the local edge
  // direction relative to the global one.
  const std::array<int, 6> &TetEdges(int t) const { return tet_edges_[t]; }
  const std::array<int, 6> &TetEdgeSigns(int t) const { return tet_edge_signs_[t]; }
  // Tet -> global face ids; local face i is opposite local vertex i.
  const std::array<int, 4> &TetFaces(int t) const { return tet_faces_[t]; }
  // Face -> adjacent tets (second entry -1 on the boundary).
  const std::array<int, 2> &FaceTets(int f) const { return face_tets_[f]; }

  const std::vector<BoundaryFace> &BoundaryFaces() const { return boundary_faces_; }
  const BoundaryFace &GetBoundaryFace(int bf) const { return boundary_faces_[bf]; }
  // Global edge id of boundary edge be.
  int BoundaryEdge(int be) const { return boundary_edges_[be]; }
  // Boundary edge index of a global edge, or -1.
  int BoundaryEdgeIndex(int e) const { return edge_to_boundary_[e]; }
  // Boundary face index of a global face, or -1.
  int BoundaryFaceIndex(int f) const { return face_to_boundary_[f]; }
  // Boundary faces (F+, F-) adjacent to boundary edge be. F+ traverses the edge in its
  // global direction when walking the face counterclockwise.
  const std::array<int, 2> &BoundaryEdgeFaces(int be) const { return boundary_edge_faces_[be]; }
  bool IsBoundaryVertex(int v) const { return boundary_vertex_[v] != 0; }

  double SignedVolume(int t) const;
  double TotalVolume() const;
  double EdgeLength(int e) const;
  double BoundaryFaceArea(int bf) const;
  Vec3 BoundaryFaceNormal(int bf) const;
  double BoundaryArea() const;
  BoundaryEdgeFrame EdgeFrame(int be) const;

  // +1 if boundary edge be is traversed in its global direction by boundary face bf.
  int BoundaryEdgeOrientation(int be, int bf) const;

  // V - E + F of the boundary surface (2 for a sphere-like boundary).
  int BoundaryEulerCharacteristic() const;

  // Largest tetrahedron diameter (its longest edge).
  double MeshSize() const;

  // Copy with all vertex coordinates multiplied by factor.
  Mesh Scaled(double factor) const;

private:
  void BuildTopology();

  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 4>> tets_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> faces_;
  std::vector<std::array<int, 6>> tet_edges_;
  std::vector<std::array<int, 6>> tet_edge_signs_;
  std::vector<std::array<int, 4>> tet_faces_;
  std::vector<std::array<int, 2>> face_tets_;
  std::vector<BoundaryFace> boundary_faces_;
  std::vector<int> boundary_edges_;
  std::vector<int> edge_to_boundary_;
  std::vector<int> face_to_boundary_;
  std::vector<std::array<int, 2>> boundary_edge_faces_;
  std::vector<char> boundary_vertex_;
  int num_boundary_vertices_ = 0;
  int orientation_fixes_ = 0;
};

// Gmsh MSH 2.2 ASCII. Only nodes and 4-node tetrahedra (type 4) are used; triangles
// (type 2) are counted and ignored since the boundary is derived from the volume.
Mesh ParseMsh(std::istream &in);
Mesh ParseMsh(std::string_view text);
Mesh ReadMsh(const std::string &path);
void WriteMsh(const Mesh &mesh, std::ostream &out);

// Debug dump: {"vertices": [...], "tets": [...], "boundary_faces": [...], ...}.
std::string MeshToJson(const Mesh &mesh);

// Unit cube [0,1]^3 split into n^3 cubes of 6 Kuhn tetrahedra each.
Mesh GenerateCube(int n);

// Cylinder {x^2 + y^2 < R^2, 0 < z < L} from an extruded structured disk: a center
// vertex plus n_r rings of n_theta vertices, n_z layers of prisms split into 3 tets.
Mesh GenerateCylinder(double radius, double height, int n_r, int n_theta, int n_z);

} // namespace eddy

#endif // EDDY_MESH_HPP
