// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_TRACE_HPP
#define EDDY_TRACE_HPP

#include <array>
#include "eddy/mesh.hpp"
#include "eddy/nedelec.hpp"

namespace eddy
{

//
// Lowest order surface Nedelec space on the boundary, one function per boundary edge:
//   phi_e|F = |e| (l_a grad l_b - l_b grad l_a),  e = (a, b), a < b,
// so that phi_e . t_e = 1 on e. Its rotation psi_e = phi_e x n is the RWG function.
// Points on a boundary face are given by barycentric coordinates in the face's outward
// vertex order.
//
class ControlSpace
{
public:
  explicit ControlSpace(const Mesh &mesh);

  const Mesh &GetMesh() const { return *mesh_; }
  int Size() const { return mesh_->NumBoundaryEdges(); }

  // +1 on F+ (e counterclockwise in F), -1 on F-, 0 if e is not an edge of F.
  int Sign(int be, int bf) const { return mesh_->BoundaryEdgeOrientation(be, bf); }

  Vec3 FacePoint(int bf, const std::array<double, 3> &lambda) const;
  // Surface gradients of the face barycentrics.
  std::array<Vec3, 3> FaceGradients(int bf) const;

  Vec3 EvalPhi(int be, int bf, const std::array<double, 3> &lambda) const;
  Vec3 EvalPsi(int be, int bf, const std::array<double, 3> &lambda) const;
  // Facewise constants curl_G phi_e = div_G psi_e = +-|e| / |F+-|.
  double CurlPhi(int be, int bf) const;
  double DivPsi(int be, int bf) const { return CurlPhi(be, bf); }

  CVec3 Evaluate(const ComplexVector &z, int bf, const std::array<double, 3> &lambda) const;
  Complex Curl(const ComplexVector &z, int bf) const;

  // (B^T B)^-1 for B = [v2 - v1, v3 - v1], written with squared edge lengths.
  Eigen::Matrix2d MetricMatrix(int bf) const;

  // Coefficients of the surface gradient of the hat function of boundary vertex v.
  ComplexVector VertexGradient(int v) const;

private:
  const Mesh *mesh_;
};

// (curl_G phi_j, curl_G phi_i): sum over faces of s_i s_j |e_i| |e_j| / |F|.
RealSparse SurfaceCurlMatrix(const ControlSpace &control);

// (phi_j, phi_i) from the reference element integrals and the metric matrix.
RealSparse SurfaceMassMatrix(const ControlSpace &control);

// z^H (M + K) z.
double CurlNormSquared(const ComplexVector &z, const RealSparse &mass, const RealSparse &curl);

//
// Extension of a control into the volume space by its boundary moments (interior moments
// zero), and the tangential trace back onto boundary edge coefficients.
//
class Lifting
{
public:
  Lifting(const FESpace &space, const ControlSpace &control);

  // N x E_G real matrix P with lift(z) = P z.
  const RealSparse &Matrix() const { return P_; }
  ComplexVector Lift(const ComplexVector &z) const;
  ComplexVector Trace(const ComplexVector &u) const;
  // Rows of P restricted to the boundary dofs (B x E_G).
  const RealSparse &BoundaryMatrix() const { return PB_; }

private:
  const FESpace *space_;
  const ControlSpace *control_;
  RealSparse P_, PB_;
};

} // namespace eddy

#endif // EDDY_TRACE_HPP
