// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <catch_amalgamated.hpp>
#include "eddy/trace.hpp"
#include "surface_oracles.hpp"
#include "test_common.hpp"

namespace eddy
{
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace std::complex_literals;
using namespace test;

namespace
{

std::vector<Mesh> TestMeshes()
{
  std::vector<Mesh> meshes;
  meshes.push_back(ReferenceTet());
  meshes.push_back(PerturbedCube(2, 21));
  meshes.push_back(GenerateCylinder(0.5, 1.0, 2, 7, 2));
  return meshes;
}

} // namespace

TEST_CASE("RWG function identities", "[trace]")
{
  for (const auto &mesh : TestMeshes())
  {
    const ControlSpace control(mesh);
    for (int be = 0; be < control.Size(); be++)
    {
      for (int bf : mesh.BoundaryEdgeFaces(be))
      {
        const int sign = control.Sign(be, bf);
        for (int i = 0; i < 3; i++)
        {
          const auto fe = GetFaceEdge(mesh, bf, i);
          // nu along e is t x n_F with the global t: outward on F+, inward on F-.
          const Vec3 nu = sign * fe.outward;
          for (double s : {0.0, 0.3, 1.0})
          {
            const Vec3 psi = control.EvalPsi(be, bf, Lerp(fe.start, fe.end, s));
            if (fe.global == mesh.BoundaryEdge(be))
            {
              CHECK_THAT(psi.dot(nu), WithinAbs(1.0, 1e-12));
            }
            else
            {
              CHECK_THAT(psi.dot(fe.outward), WithinAbs(0.0, 1e-12));
            }
          }
        }
        const auto [circ, flux] = CirculationAndFlux(
            mesh, bf, [&](const auto &l) { return control.EvalPsi(be, bf, l); });
        const double area = mesh.BoundaryFaceArea(bf);
        const double expected = sign * mesh.EdgeLength(mesh.BoundaryEdge(be)) / area;
        CHECK_THAT(flux / area, WithinRel(expected, 1e-12));
        CHECK_THAT(control.DivPsi(be, bf), WithinRel(expected, 1e-14));
      }
    }
  }
}

TEST_CASE("Surface Nedelec function identities", "[trace]")
{
  std::mt19937_64 rng(3);
  for (const auto &mesh : TestMeshes())
  {
    const ControlSpace control(mesh);
    for (int be = 0; be < control.Size(); be++)
    {
      const int e = mesh.BoundaryEdge(be);
      double integral = 0.0;
      for (int bf : mesh.BoundaryEdgeFaces(be))
      {
        const Vec3 n = mesh.BoundaryFaceNormal(bf);
        // Tangential components along every edge of the face: delta.
        for (int i = 0; i < 3; i++)
        {
          const auto fe = GetFaceEdge(mesh, bf, i);
          const auto &[c, d] = mesh.Edge(fe.global);
          const Vec3 t = (mesh.Vertex(d) - mesh.Vertex(c)).normalized();
          for (double s : {0.0, 0.5, 0.9})
          {
            const double value = control.EvalPhi(be, bf, Lerp(fe.start, fe.end, s)).dot(t);
            CHECK_THAT(value, WithinAbs(fe.global == e ? 1.0 : 0.0, 1e-12));
          }
        }
        // Rotation identity at random points.
        for (int q = 0; q < 3; q++)
        {
          const auto l = RandomBarycentric(rng);
          const Vec3 diff = control.EvalPhi(be, bf, l).cross(n) - control.EvalPsi(be, bf, l);
          CHECK(diff.norm() <= 1e-12 * std::max(1.0, control.EvalPsi(be, bf, l).norm()));
        }
        // Stokes: the facewise curl is the circulation over the area.
        const double area = mesh.BoundaryFaceArea(bf);
        const auto [circ, flux] = CirculationAndFlux(
            mesh, bf, [&](const auto &l) { return control.EvalPhi(be, bf, l); });
        CHECK_THAT(circ / area, WithinRel(control.CurlPhi(be, bf), 1e-12));
        CHECK_THAT(control.CurlPhi(be, bf),
                   WithinRel(control.Sign(be, bf) * mesh.EdgeLength(e) / area, 1e-15));
        CHECK(std::abs(flux) <= 1e-12 * mesh.EdgeLength(e));
        integral += control.CurlPhi(be, bf) * area;
      }
      CHECK(std::abs(integral) <= 1e-12 * mesh.EdgeLength(e));
    }
  }
}

TEST_CASE("Discrete controls are surface divergence free", "[trace]")
{
  std::mt19937_64 rng(9);
  for (const auto &mesh : TestMeshes())
  {
    const ControlSpace control(mesh);
    const ComplexVector z = RandomVector(control.Size(), rng);
    for (int bf = 0; bf < mesh.NumBoundaryFaces(); bf++)
    {
      const auto [cr, fr] = CirculationAndFlux(
          mesh, bf, [&](const auto &l) { return Vec3(control.Evaluate(z, bf, l).real()); });
      const auto [ci, fi] = CirculationAndFlux(
          mesh, bf, [&](const auto &l) { return Vec3(control.Evaluate(z, bf, l).imag()); });
      const double area = mesh.BoundaryFaceArea(bf);
      CHECK(std::abs(Complex(fr, fi)) / area <= 1e-12 * z.cwiseAbs().maxCoeff() / std::sqrt(area));
      CHECK(std::abs(Complex(cr, ci) / area - control.Curl(z, bf)) <=
            1e-12 * std::abs(control.Curl(z, bf)) + 1e-12);
    }
  }
}

TEST_CASE("Metric matrix examples", "[trace]")
{
  // Equilateral triangle with side 1 on the boundary of a regular tetrahedron.
  const double s3 = std::sqrt(3.0);
  const Mesh regular({{0, 0, 0}, {1, 0, 0}, {0.5, s3 / 2, 0}, {0.5, s3 / 6, std::sqrt(2.0 / 3.0)}},
                     {{0, 1, 2, 3}});
  const ControlSpace rc(regular);
  for (int bf = 0; bf < regular.NumBoundaryFaces(); bf++)
  {
    Eigen::Matrix2d expected;
    expected << 1.0, -0.5, -0.5, 1.0;
    expected *= 4.0 / 3.0;
    CHECK((rc.MetricMatrix(bf) - expected).norm() <= 1e-12);
  }

  // Reference right triangle: the face of the unit tet in the plane z = 0 with its right
  // angle at the first vertex.
  const Mesh tet = ReferenceTet();
  const ControlSpace tc(tet);
  int found = 0;
  for (int bf = 0; bf < tet.NumBoundaryFaces(); bf++)
  {
    const auto &v = tet.GetBoundaryFace(bf).vertices;
    if (v[0] == 0 && tet.BoundaryFaceNormal(bf).z() < -0.5)
    {
      CHECK((tc.MetricMatrix(bf) - Eigen::Matrix2d::Identity()).norm() <= 1e-14);
      found++;
    }
  }
  // The outward order may start elsewhere; the rotation invariant check still applies.
  for (int bf = 0; bf < tet.NumBoundaryFaces(); bf++)
  {
    const auto &face = tet.GetBoundaryFace(bf);
    Eigen::Matrix<double, 3, 2> B;
    B.col(0) = tet.Vertex(face.vertices[1]) - tet.Vertex(face.vertices[0]);
    B.col(1) = tet.Vertex(face.vertices[2]) - tet.Vertex(face.vertices[0]);
    const Eigen::Matrix2d direct = (B.transpose() * B).inverse();
    CHECK((tc.MetricMatrix(bf) - direct).norm() <= 1e-13);
  }
  CHECK(found <= 1);
}

TEST_CASE("Closed-form surface matrices match quadrature", "[trace]")
{
  const auto rule = TriangleRule7();
  for (const auto &mesh : TestMeshes())
  {
    const ControlSpace control(mesh);
    const Eigen::MatrixXd K(SurfaceCurlMatrix(control));
    const Eigen::MatrixXd M(SurfaceMassMatrix(control));
    const int n = control.Size();
    Eigen::MatrixXd Kq = Eigen::MatrixXd::Zero(n, n), Mq = Eigen::MatrixXd::Zero(n, n);
    for (int bf = 0; bf < mesh.NumBoundaryFaces(); bf++)
    {
      const double area = mesh.BoundaryFaceArea(bf);
      std::array<int, 3> be;
      for (int i = 0; i < 3; i++)
      {
        be[i] = mesh.BoundaryEdgeIndex(mesh.GetBoundaryFace(bf).edges[i]);
      }
      for (std::size_t q = 0; q < rule.w.size(); q++)
      {
        for (int i : be)
        {
          const auto [ci, fi] = CirculationAndFlux(
              mesh, bf, [&](const auto &l) { return control.EvalPhi(i, bf, l); });
          for (int j : be)
          {
            const auto [cj, fj] = CirculationAndFlux(
                mesh, bf, [&](const auto &l) { return control.EvalPhi(j, bf, l); });
            const Vec3 pi = control.EvalPhi(i, bf, rule.lambda[q]);
            const Vec3 pj = control.EvalPhi(j, bf, rule.lambda[q]);
            Mq(i, j) += rule.w[q] * area * pi.dot(pj);
            Kq(i, j) += rule.w[q] * area * (ci / area) * (cj / area);
          }
        }
      }
    }
    CHECK((M - Mq).cwiseAbs().maxCoeff() <= 1e-12 * M.cwiseAbs().maxCoeff());
    CHECK((K - Kq).cwiseAbs().maxCoeff() <= 1e-12 * K.cwiseAbs().maxCoeff());
    CHECK((K - K.transpose()).norm() == 0.0);
    CHECK((M - M.transpose()).norm() == 0.0);

    for (int be = 0; be < n; be++)
    {
      const int e = mesh.BoundaryEdge(be);
      const auto &f = mesh.BoundaryEdgeFaces(be);
      const double len2 = std::pow(mesh.EdgeLength(e), 2);
      const double diag =
          len2 * (1.0 / mesh.BoundaryFaceArea(f[0]) + 1.0 / mesh.BoundaryFaceArea(f[1]));
      CHECK_THAT(K(be, be), WithinRel(diag, 1e-14));
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("Kernel of the surface curl", "[trace]")
{
  std::mt19937_64 rng(4);
  for (const auto &mesh : TestMeshes())
  {
    const ControlSpace control(mesh);
    const RealSparse K = SurfaceCurlMatrix(control);
    const RealSparse M = SurfaceMassMatrix(control);
    for (int v = 0; v < mesh.NumVertices(); v++)
    {
      if (!mesh.IsBoundaryVertex(v))
      {
        continue;
      }
      const ComplexVector z = control.VertexGradient(v);
      CHECK((K * z).norm() <= 1e-12 * Eigen::MatrixXd(K).norm() * z.norm());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(K)};
    svd.setThreshold(1e-10);
    CHECK(control.Size() - svd.rank() == mesh.NumBoundaryVertices() - 1);

    for (int trial = 0; trial < 5; trial++)
    {
      const ComplexVector z = RandomVector(control.Size(), rng);
      CHECK(CurlNormSquared(z, M, K) > 0.0);
    }
    CHECK(CurlNormSquared(ComplexVector::Zero(control.Size()), M, K) == 0.0);
  }
}

TEST_CASE("Lifting and tangential trace", "[trace]")
{
  std::mt19937_64 rng(12);
  const auto rule = TriangleRule7();
  for (const auto &mesh : TestMeshes())
  {
    const ControlSpace control(mesh);
    const RealSparse K = SurfaceCurlMatrix(control), M = SurfaceMassMatrix(control);
    for (int k : {0, 1})
    {
      const FESpace space(mesh, k);
      const Lifting lifting(space, control);
      CHECK(lifting.Lift(ComplexVector::Zero(control.Size())).norm() == 0.0);

      const ComplexVector z = RandomVector(control.Size(), rng);
      const ComplexVector u = lifting.Lift(z);
      CHECK((lifting.Trace(u) - z).norm() <= 1e-12 * z.norm());
      for (int d : space.InteriorDofs())
      {
        REQUIRE(u(d) == 0.0);
      }
      if (k == 0)
      {
        for (int be = 0; be < control.Size(); be++)
        {
          CHECK(u(mesh.BoundaryEdge(be)) == z(be));
        }
      }

      // The tangential part of the lifted field on each boundary face is z itself.
      double worst = 0.0;
      for (int bf = 0; bf < mesh.NumBoundaryFaces(); bf++)
      {
        const auto &face = mesh.GetBoundaryFace(bf);
        const int t = mesh.FaceTets(face.face)[0];
        const auto &tet = mesh.Tet(t);
        const CVec3 n = mesh.BoundaryFaceNormal(bf).cast<Complex>();
        for (std::size_t q = 0; q < rule.w.size(); q++)
        {
          std::array<double, 4> lambda{};
          for (int i = 0; i < 3; i++)
          {
            const auto local = std::find(tet.begin(), tet.end(), face.vertices[i]) - tet.begin();
            lambda[local] = rule.lambda[q][i];
          }
          const CVec3 v = EvaluateField(space, u, t, lambda).first;
          const CVec3 tangential = v - n * (n.transpose() * v)(0);
          worst = std::max(worst, (tangential - control.Evaluate(z, bf, rule.lambda[q])).norm());
        }
      }
      CHECK(worst <= 1e-11);

      // Interior supported fields have zero trace.
      ComplexVector interior = ComplexVector::Zero(space.Size());
      for (int d : space.InteriorDofs())
      {
        interior(d) = Complex(1.0, -2.0);
      }
      CHECK(lifting.Trace(interior).norm() == 0.0);

      // Continuity constant of the lifting, for the record.
      const auto sys = Assemble(space, ProblemConfig{});
      const double volume = u.dot((sys.stiffness + sys.mass) * u).real();
      const double surface = CurlNormSquared(z, M, K);
      INFO("lifting constant " << std::sqrt(volume / surface));
      CHECK(std::isfinite(std::sqrt(volume / surface)));
    }
  }
}

TEST_CASE("Trace of an interpolated constant", "[trace]")
{
  const Mesh mesh = GenerateCube(2);
  const ControlSpace control(mesh);
  const FESpace space(mesh, 1);
  const Lifting lifting(space, control);
  const auto z = lifting.Trace(Interpolate(space, Constant(CVec3(1, 0, 0))));
  for (int be = 0; be < control.Size(); be++)
  {
    const auto &[a, b] = mesh.Edge(mesh.BoundaryEdge(be));
    const Vec3 t = (mesh.Vertex(b) - mesh.Vertex(a)).normalized();
    CHECK_THAT(z(be).real(), WithinAbs(t(0), 1e-14));
  }
}

} // namespace eddy
