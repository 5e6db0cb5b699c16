// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "eddy/trace.hpp"

#include <algorithm>

namespace eddy
{

namespace
{

// Local position of boundary edge e in face bf, or -1.
int LocalEdge(const BoundaryFace &face, int e)
{
  for (int i = 0; i < 3; i++)
  {
    if (face.edges[i] == e)
    {
      return i;
    }
  }
  return -1;
}

// Local face indices (l, m) of the endpoints of edge e in global direction.
std::array<int, 2> LocalEndpoints(const Mesh &mesh, const BoundaryFace &face, int e)
{
  const auto &[a, b] = mesh.Edge(e);
  std::array<int, 2> lm = {-1, -1};
  for (int i = 0; i < 3; i++)
  {
    if (face.vertices[i] == a)
    {
      lm[0] = i;
    }
    if (face.vertices[i] == b)
    {
      lm[1] = i;
    }
  }
  return lm;
}

// Integrals of l_a l_b over the reference triangle.
double ReferenceProduct(int a, int b)
{
  return a == b ? 1.0 / 12.0 : 1.0 / 24.0;
}

} // namespace

ControlSpace::ControlSpace(const Mesh &mesh) : mesh_(&mesh)
{
  if (mesh.NumBoundaryEdges() == 0)
  {
    throw std::invalid_argument("control space needs a mesh with a boundary");
  }
}

Vec3 ControlSpace::FacePoint(int bf, const std::array<double, 3> &lambda) const
{
  const auto &v = mesh_->GetBoundaryFace(bf).vertices;
  return lambda[0] * mesh_->Vertex(v[0]) + lambda[1] * mesh_->Vertex(v[1]) +
         lambda[2] * mesh_->Vertex(v[2]);
}

std::array<Vec3, 3> ControlSpace::FaceGradients(int bf) const
{
  const auto &v = mesh_->GetBoundaryFace(bf).vertices;
  const Vec3 n = mesh_->BoundaryFaceNormal(bf);
  const double two_area = 2.0 * mesh_->BoundaryFaceArea(bf);
  std::array<Vec3, 3> g;
  for (int i = 0; i < 3; i++)
  {
    g[i] = n.cross(mesh_->Vertex(v[(i + 2) % 3]) - mesh_->Vertex(v[(i + 1) % 3])) / two_area;
  }
  return g;
}

Vec3 ControlSpace::EvalPhi(int be, int bf, const std::array<double, 3> &lambda) const
{
  const int e = mesh_->BoundaryEdge(be);
  const auto &face = mesh_->GetBoundaryFace(bf);
  if (LocalEdge(face, e) < 0)
  {
    return Vec3::Zero();
  }
  const auto [l, m] = LocalEndpoints(*mesh_, face, e);
  const auto g = FaceGradients(bf);
  return mesh_->EdgeLength(e) * (lambda[l] * g[m] - lambda[m] * g[l]);
}

Vec3 ControlSpace::EvalPsi(int be, int bf, const std::array<double, 3> &lambda) const
{
  const int e = mesh_->BoundaryEdge(be);
  const auto &face = mesh_->GetBoundaryFace(bf);
  const int i = LocalEdge(face, e);
  if (i < 0)
  {
    return Vec3::Zero();
  }
  // RWG: +-|e| / (2 |F+-|) (x - p+-) with p the vertex opposite e.
  const Vec3 x = FacePoint(bf, lambda);
  const Vec3 &p = mesh_->Vertex(face.vertices[i]);
  return Sign(be, bf) * mesh_->EdgeLength(e) / (2.0 * mesh_->BoundaryFaceArea(bf)) * (x - p);
}

double ControlSpace::CurlPhi(int be, int bf) const
{
  return Sign(be, bf) * mesh_->EdgeLength(mesh_->BoundaryEdge(be)) / mesh_->BoundaryFaceArea(bf);
}

CVec3 ControlSpace::Evaluate(const ComplexVector &z, int bf,
                             const std::array<double, 3> &lambda) const
{
  CVec3 v = CVec3::Zero();
  for (int e : mesh_->GetBoundaryFace(bf).edges)
  {
    const int be = mesh_->BoundaryEdgeIndex(e);
    v += z(be) * EvalPhi(be, bf, lambda).cast<Complex>();
  }
  return v;
}

Complex ControlSpace::Curl(const ComplexVector &z, int bf) const
{
  Complex c = 0.0;
  for (int e : mesh_->GetBoundaryFace(bf).edges)
  {
    const int be = mesh_->BoundaryEdgeIndex(e);
    c += z(be) * CurlPhi(be, bf);
  }
  return c;
}

Eigen::Matrix2d ControlSpace::MetricMatrix(int bf) const
{
  const auto &v = mesh_->GetBoundaryFace(bf).vertices;
  const Vec3 &x1 = mesh_->Vertex(v[0]), &x2 = mesh_->Vertex(v[1]), &x3 = mesh_->Vertex(v[2]);
  const double ea = (x3 - x1).squaredNorm(); // v1 v3
  const double eb = (x3 - x2).squaredNorm(); // v2 v3
  const double ec = (x2 - x1).squaredNorm(); // v1 v2
  const double area = mesh_->BoundaryFaceArea(bf);
  if (!(area > 0.0))
  {
    throw std::runtime_error("degenerate boundary face " + std::to_string(bf));
  }
  const double off = 0.5 * (eb - ea - ec);
  Eigen::Matrix2d B;
  B << ea, off, off, ec;
  return B / (4.0 * area * area);
}

ComplexVector ControlSpace::VertexGradient(int v) const
{
  ComplexVector z = ComplexVector::Zero(Size());
  for (int be = 0; be < Size(); be++)
  {
    const int e = mesh_->BoundaryEdge(be);
    const auto &[a, b] = mesh_->Edge(e);
    if (v == a || v == b)
    {
      z(be) = (v == b ? 1.0 : -1.0) / mesh_->EdgeLength(e);
    }
  }
  return z;
}

RealSparse SurfaceCurlMatrix(const ControlSpace &control)
{
  const Mesh &mesh = control.GetMesh();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * mesh.NumBoundaryFaces());
  for (int bf = 0; bf < mesh.NumBoundaryFaces(); bf++)
  {
    const auto &face = mesh.GetBoundaryFace(bf);
    const double area = mesh.BoundaryFaceArea(bf);
    std::array<int, 3> be;
    std::array<double, 3> c;
    for (int i = 0; i < 3; i++)
    {
      be[i] = mesh.BoundaryEdgeIndex(face.edges[i]);
      c[i] = control.Sign(be[i], bf) * mesh.EdgeLength(face.edges[i]);
    }
    for (int i = 0; i < 3; i++)
    {
      for (int j = 0; j < 3; j++)
      {
        triplets.emplace_back(be[i], be[j], c[i] * c[j] / area);
      }
    }
  }
  RealSparse K(control.Size(), control.Size());
  K.setFromTriplets(triplets.begin(), triplets.end());
  return K;
}

RealSparse SurfaceMassMatrix(const ControlSpace &control)
{
  const Mesh &mesh = control.GetMesh();
  // Reference gradients of l1 = 1 - x - y, l2 = x, l3 = y and the reference functions
  // w_21, w_32, w_13 attached to edges v1v2, v2v3, v3v1.
  const std::array<Eigen::Vector2d, 3> g = {Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 0),
                                            Eigen::Vector2d(0, 1)};
  const std::array<std::array<int, 2>, 3> ref = {{{1, 0}, {2, 1}, {0, 2}}};
  // Face edge opposite vertex i corresponds to reference function: i = 0 -> v2v3,
  // i = 1 -> v3v1, i = 2 -> v1v2.
  const std::array<int, 3> ref_of_local = {1, 2, 0};

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * mesh.NumBoundaryFaces());
  for (int bf = 0; bf < mesh.NumBoundaryFaces(); bf++)
  {
    const auto &face = mesh.GetBoundaryFace(bf);
    const Eigen::Matrix2d B = control.MetricMatrix(bf);
    const double det = 2.0 * mesh.BoundaryFaceArea(bf);
    // G(i, j) = g_i^T B g_j.
    Eigen::Matrix3d G;
    for (int i = 0; i < 3; i++)
    {
      for (int j = 0; j < 3; j++)
      {
        G(i, j) = g[i].dot(B * g[j]);
      }
    }
    // int w_ab . B w_cd = I(a,c) G(b,d) - I(a,d) G(b,c) - I(b,c) G(a,d) + I(b,d) G(a,c).
    auto ref_integral = [&](int r, int s)
    {
      const auto [a, b] = ref[r];
      const auto [c, d] = ref[s];
      return ReferenceProduct(a, c) * G(b, d) - ReferenceProduct(a, d) * G(b, c) -
             ReferenceProduct(b, c) * G(a, d) + ReferenceProduct(b, d) * G(a, c);
    };
    std::array<int, 3> be;
    std::array<double, 3> c;
    for (int i = 0; i < 3; i++)
    {
      be[i] = mesh.BoundaryEdgeIndex(face.edges[i]);
      c[i] = control.Sign(be[i], bf) * mesh.EdgeLength(face.edges[i]);
    }
    for (int i = 0; i < 3; i++)
    {
      for (int j = i; j < 3; j++)
      {
        const double m = c[i] * c[j] * det * ref_integral(ref_of_local[i], ref_of_local[j]);
        triplets.emplace_back(be[i], be[j], m);
        if (j != i)
        {
          triplets.emplace_back(be[j], be[i], m);
        }
      }
    }
  }
  RealSparse M(control.Size(), control.Size());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

double CurlNormSquared(const ComplexVector &z, const RealSparse &mass, const RealSparse &curl)
{
  return z.dot(mass * z + curl * z).real();
}

Lifting::Lifting(const FESpace &space, const ControlSpace &control)
  : space_(&space), control_(&control)
{
  const Mesh &mesh = space.GetMesh();
  if (&mesh != &control.GetMesh())
  {
    throw std::invalid_argument("lifting: space and control live on different meshes");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (int be = 0; be < control.Size(); be++)
  {
    triplets.emplace_back(space.EdgeDof(mesh.BoundaryEdge(be), 0), be, 1.0);
  }
  if (space.FaceMoments() > 0)
  {
    // Face moments of the facewise linear control: mean of phi_e . t over the face.
    const auto rule = TriangleRuleForDegree(2);
    for (int bf = 0; bf < mesh.NumBoundaryFaces(); bf++)
    {
      const auto &face = mesh.GetBoundaryFace(bf);
      auto ids = mesh.Face(face.face);
      std::sort(ids.begin(), ids.end());
      const Vec3 t0 = (mesh.Vertex(ids[1]) - mesh.Vertex(ids[0])).normalized();
      const Vec3 t1 = (mesh.Vertex(ids[2]) - mesh.Vertex(ids[0])).normalized();
      for (int e : face.edges)
      {
        const int be = mesh.BoundaryEdgeIndex(e);
        double m0 = 0.0, m1 = 0.0;
        for (std::size_t q = 0; q < rule.w.size(); q++)
        {
          const Vec3 phi = control.EvalPhi(be, bf, rule.lambda[q]);
          m0 += rule.w[q] * phi.dot(t0);
          m1 += rule.w[q] * phi.dot(t1);
        }
        triplets.emplace_back(space.FaceDof(face.face, 0), be, m0);
        triplets.emplace_back(space.FaceDof(face.face, 1), be, m1);
      }
    }
  }
  P_.resize(space.Size(), control.Size());
  P_.setFromTriplets(triplets.begin(), triplets.end());

  std::vector<Eigen::Triplet<double>> boundary;
  for (int col = 0; col < P_.outerSize(); col++)
  {
    for (RealSparse::InnerIterator it(P_, col); it; ++it)
    {
      boundary.emplace_back(space.BoundaryPosition(static_cast<int>(it.row())), col, it.value());
    }
  }
  PB_.resize(static_cast<int>(space.BoundaryDofs().size()), control.Size());
  PB_.setFromTriplets(boundary.begin(), boundary.end());
}

ComplexVector Lifting::Lift(const ComplexVector &z) const
{
  if (z.size() != control_->Size())
  {
    throw std::invalid_argument("lift: control vector has wrong size");
  }
  return P_ * z;
}

ComplexVector Lifting::Trace(const ComplexVector &u) const
{
  if (u.size() != space_->Size())
  {
    throw std::invalid_argument("trace: field vector has wrong size");
  }
  const Mesh &mesh = space_->GetMesh();
  ComplexVector z(control_->Size());
  for (int be = 0; be < control_->Size(); be++)
  {
    z(be) = u(space_->EdgeDof(mesh.BoundaryEdge(be), 0));
  }
  return z;
}

} // namespace eddy
