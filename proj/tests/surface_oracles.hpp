// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_SURFACE_ORACLES_HPP
#define EDDY_SURFACE_ORACLES_HPP

#include <random>
#include <utility>
#include "eddy/quadrature.hpp"
#include "eddy/trace.hpp"

// Independent surface checks built from line integrals around boundary faces.
namespace eddy::test
{

// Endpoints (as face barycentric points) and outward in-plane normal of local edge i.
struct FaceEdge
{
  std::array<double, 3> start, end;
  Vec3 outward;
  double length;
  int global;
};

inline FaceEdge GetFaceEdge(const Mesh &mesh, int bf, int i)
{
  const auto &face = mesh.GetBoundaryFace(bf);
  const int a = (i + 1) % 3, b = (i + 2) % 3;
  FaceEdge fe;
  fe.start = {0, 0, 0};
  fe.end = {0, 0, 0};
  fe.start[a] = 1.0;
  fe.end[b] = 1.0;
  const Vec3 xa = mesh.Vertex(face.vertices[a]), xb = mesh.Vertex(face.vertices[b]);
  // Counterclockwise traversal a -> b: the outward normal is t x n.
  fe.outward = (xb - xa).normalized().cross(mesh.BoundaryFaceNormal(bf));
  fe.length = (xb - xa).norm();
  fe.global = face.edges[i];
  return fe;
}

inline std::array<double, 3> Lerp(const std::array<double, 3> &a, const std::array<double, 3> &b,
                           double s)
{
  return {(1 - s) * a[0] + s * b[0], (1 - s) * a[1] + s * b[1], (1 - s) * a[2] + s * b[2]};
}

// Boundary line integrals around a face: circulation of f . t and flux of f . nu.
template <typename F>
std::pair<double, double> CirculationAndFlux(const Mesh &mesh, int bf, F &&f)
{
  const auto line = LineRuleForDegree(4);
  double circulation = 0.0, flux = 0.0;
  for (int i = 0; i < 3; i++)
  {
    const auto fe = GetFaceEdge(mesh, bf, i);
    const Vec3 t = fe.outward.cross(mesh.BoundaryFaceNormal(bf)) * -1.0;
    for (std::size_t q = 0; q < line.s.size(); q++)
    {
      const Vec3 v = f(Lerp(fe.start, fe.end, line.s[q]));
      circulation += line.w[q] * fe.length * v.dot(t);
      flux += line.w[q] * fe.length * v.dot(fe.outward);
    }
  }
  return {circulation, flux};
}

inline std::array<double, 3> RandomBarycentric(std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> d(0.0, 1.0);
  double a = d(rng), b = d(rng);
  if (a + b > 1.0)
  {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return {1.0 - a - b, a, b};
}

} // namespace eddy::test

#endif // EDDY_SURFACE_ORACLES_HPP
