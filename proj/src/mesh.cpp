// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "eddy/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace eddy
{

namespace
{

struct TripleHash
{
  std::size_t operator()(const std::array<int, 3> &k) const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : k)
    {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t EdgeKey(int a, int b)
{
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double SignedVolumeOf(const Vec3 &a, const Vec3 &b, const Vec3 &c, const Vec3 &d)
{
  return (b - a).dot((c - a).cross(d - a)) / 6.0;
}

} // namespace

Mesh::Mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tets)
  : vertices_(std::move(vertices)), tets_(std::move(tets))
{
  BuildTopology();
}

void Mesh::BuildTopology()
{
  const int nv = NumVertices();
  if (tets_.empty())
  {
    throw MeshError("mesh has no tetrahedra");
  }
  for (auto &tet : tets_)
  {
    for (int v : tet)
    {
      if (v < 0 || v >= nv)
      {
        throw MeshError("tetrahedron references vertex " + std::to_string(v) +
                        " outside [0, " + std::to_string(nv) + ")");
      }
    }
    const double vol = SignedVolumeOf(vertices_[tet[0]], vertices_[tet[1]],
                                      vertices_[tet[2]], vertices_[tet[3]]);
    if (vol == 0.0)
    {
      throw MeshError("degenerate tetrahedron with zero volume");
    }
    if (vol < 0.0)
    {
      std::swap(tet[2], tet[3]);
      ++orientation_fixes_;
    }
  }

  // Edges, in order of first appearance, oriented from lower to higher vertex id.
  std::unordered_map<std::uint64_t, int> edge_ids;
  edge_ids.reserve(tets_.size() * 2);
  tet_edges_.resize(tets_.size());
  tet_edge_signs_.resize(tets_.size());
  for (std::size_t t = 0; t < tets_.size(); t++)
  {
    const auto &tet = tets_[t];
    for (int l = 0; l < 6; l++)
    {
      const int a = tet[kTetEdges[l][0]], b = tet[kTetEdges[l][1]];
      const int lo = std::min(a, b), hi = std::max(a, b);
      auto [it, inserted] = edge_ids.try_emplace(EdgeKey(lo, hi), NumEdges());
      if (inserted)
      {
        edges_.push_back({lo, hi});
      }
      tet_edges_[t][l] = it->second;
      tet_edge_signs_[t][l] = (a < b) ? 1 : -1;
    }
  }

  // Faces, keyed by sorted vertex triple. Local face i is opposite local vertex i.
  std::unordered_map<std::array<int, 3>, int, TripleHash> face_ids;
  face_ids.reserve(tets_.size() * 3);
  tet_faces_.resize(tets_.size());
  for (std::size_t t = 0; t < tets_.size(); t++)
  {
    const auto &tet = tets_[t];
    for (int i = 0; i < 4; i++)
    {
      std::array<int, 3> key;
      for (int j = 0, c = 0; j < 4; j++)
      {
        if (j != i)
        {
          key[c++] = tet[j];
        }
      }
      std::sort(key.begin(), key.end());
      auto [it, inserted] = face_ids.try_emplace(key, NumFaces());
      if (inserted)
      {
        faces_.push_back(key);
        face_tets_.push_back({static_cast<int>(t), -1});
      }
      else
      {
        auto &adj = face_tets_[it->second];
        if (adj[1] != -1)
        {
          throw MeshError("face shared by more than two tetrahedra");
        }
        adj[1] = static_cast<int>(t);
      }
      tet_faces_[t][i] = it->second;
    }
  }

  // Boundary faces: faces with a single adjacent tet, reordered for outward normals.
  face_to_boundary_.assign(faces_.size(), -1);
  edge_to_boundary_.assign(edges_.size(), -1);
  boundary_vertex_.assign(nv, 0);
  for (int f = 0; f < NumFaces(); f++)
  {
    if (face_tets_[f][1] != -1)
    {
      continue;
    }
    const int t = face_tets_[f][0];
    int opposite = -1;
    for (int i = 0; i < 4; i++)
    {
      if (tet_faces_[t][i] == f)
      {
        opposite = tets_[t][i];
      }
    }
    std::array<int, 3> v = faces_[f];
    const Vec3 n = (vertices_[v[1]] - vertices_[v[0]]).cross(vertices_[v[2]] - vertices_[v[0]]);
    if (n.dot(vertices_[v[0]] - vertices_[opposite]) < 0.0)
    {
      std::swap(v[1], v[2]);
    }
    BoundaryFace bface;
    bface.face = f;
    bface.vertices = v;
    for (int i = 0; i < 3; i++)
    {
      const int a = v[(i + 1) % 3], b = v[(i + 2) % 3];
      bface.edges[i] = edge_ids.at(EdgeKey(std::min(a, b), std::max(a, b)));
      boundary_vertex_[v[i]] = 1;
    }
    face_to_boundary_[f] = NumBoundaryFaces();
    boundary_faces_.push_back(bface);
  }
  num_boundary_vertices_ =
      static_cast<int>(std::count(boundary_vertex_.begin(), boundary_vertex_.end(), 1));

  // Boundary edges with their (F+, F-) pair.
  std::vector<std::array<int, 2>> seen; // Per boundary edge: (#forward, #backward).
  for (int bf = 0; bf < NumBoundaryFaces(); bf++)
  {
    const auto &bface = boundary_faces_[bf];
    for (int i = 0; i < 3; i++)
    {
      const int e = bface.edges[i];
      if (edge_to_boundary_[e] == -1)
      {
        edge_to_boundary_[e] = NumBoundaryEdges();
        boundary_edges_.push_back(e);
        boundary_edge_faces_.push_back({-1, -1});
        seen.push_back({0, 0});
      }
      const int be = edge_to_boundary_[e];
      const int a = bface.vertices[(i + 1) % 3];
      const bool forward = (a == edges_[e][0]);
      auto &slot = boundary_edge_faces_[be][forward ? 0 : 1];
      seen[be][forward ? 0 : 1]++;
      slot = bf;
    }
  }
  for (int be = 0; be < NumBoundaryEdges(); be++)
  {
    const int total = seen[be][0] + seen[be][1];
    if (total != 2)
    {
      throw MeshError("non-manifold boundary edge " + std::to_string(boundary_edges_[be]) +
                      " with " + std::to_string(total) + " adjacent boundary faces");
    }
    if (seen[be][0] != 1 || seen[be][1] != 1)
    {
      throw MeshError("inconsistently oriented boundary at edge " +
                      std::to_string(boundary_edges_[be]));
    }
  }
}

double Mesh::SignedVolume(int t) const
{
  const auto &tet = tets_[t];
  return SignedVolumeOf(vertices_[tet[0]], vertices_[tet[1]], vertices_[tet[2]],
                        vertices_[tet[3]]);
}

double Mesh::TotalVolume() const
{
  double sum = 0.0;
  for (int t = 0; t < NumTets(); t++)
  {
    sum += SignedVolume(t);
  }
  return sum;
}

double Mesh::EdgeLength(int e) const
{
  return (vertices_[edges_[e][1]] - vertices_[edges_[e][0]]).norm();
}

double Mesh::BoundaryFaceArea(int bf) const
{
  const auto &v = boundary_faces_[bf].vertices;
  return 0.5 *
         (vertices_[v[1]] - vertices_[v[0]]).cross(vertices_[v[2]] - vertices_[v[0]]).norm();
}

Vec3 Mesh::BoundaryFaceNormal(int bf) const
{
  const auto &v = boundary_faces_[bf].vertices;
  return (vertices_[v[1]] - vertices_[v[0]])
      .cross(vertices_[v[2]] - vertices_[v[0]])
      .normalized();
}

double Mesh::BoundaryArea() const
{
  double sum = 0.0;
  for (int bf = 0; bf < NumBoundaryFaces(); bf++)
  {
    sum += BoundaryFaceArea(bf);
  }
  return sum;
}

int Mesh::BoundaryEdgeOrientation(int be, int bf) const
{
  const auto &faces = boundary_edge_faces_[be];
  if (bf == faces[0])
  {
    return 1;
  }
  if (bf == faces[1])
  {
    return -1;
  }
  return 0;
}

BoundaryEdgeFrame Mesh::EdgeFrame(int be) const
{
  BoundaryEdgeFrame frame;
  frame.edge = boundary_edges_[be];
  const auto &e = edges_[frame.edge];
  frame.tangent = (vertices_[e[1]] - vertices_[e[0]]).normalized();
  for (int s = 0; s < 2; s++)
  {
    frame.normal[s] = BoundaryFaceNormal(boundary_edge_faces_[be][s]);
    frame.in_plane[s] = frame.tangent.cross(frame.normal[s]);
  }
  return frame;
}

int Mesh::BoundaryEulerCharacteristic() const
{
  return NumBoundaryVertices() - NumBoundaryEdges() + NumBoundaryFaces();
}

double Mesh::MeshSize() const
{
  if (tets_.empty())
  {
    throw MeshError("mesh size of an empty mesh");
  }
  double h = 0.0;
  for (const auto &edges : tet_edges_)
  {
    for (int e : edges)
    {
      h = std::max(h, EdgeLength(e));
    }
  }
  return h;
}

Mesh Mesh::Scaled(double factor) const
{
  std::vector<Vec3> vertices = vertices_;
  for (auto &v : vertices)
  {
    v *= factor;
  }
  return Mesh(std::move(vertices), tets_);
}

} // namespace eddy
