// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <catch_amalgamated.hpp>
#include "eddy/analytic.hpp"
#include "eddy/quadrature.hpp"
#include "bessel_oracle.hpp"

namespace eddy
{
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace std::complex_literals;
using test::SeriesOracle;
using Complex = std::complex<double>;

namespace
{

double RelativeError(std::complex<double> value, std::complex<long double> exact)
{
  const std::complex<long double> v(value.real(), value.imag());
  return static_cast<double>(std::abs(v - exact) / std::abs(exact));
}

Eigen::Vector3cd FdCurl(const std::function<Eigen::Vector3cd(const Eigen::Vector3d &)> &f,
                        const Eigen::Vector3d &x, double h)
{
  std::array<Eigen::Vector3cd, 3> d;
  for (int i = 0; i < 3; i++)
  {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e(i) = h;
    d[i] = (f(x + e) - f(x - e)) / (2.0 * h);
  }
  return Eigen::Vector3cd(d[1](2) - d[2](1), d[2](0) - d[0](2), d[0](1) - d[1](0));
}

} // namespace

TEST_CASE("Bessel series values", "[analytic]")
{
  CHECK(BesselI(0, 0.0) == 1.0);
  CHECK(BesselI(1, 0.0) == 0.0);
  CHECK_THAT(BesselI(0, 1.0).real(), WithinRel(1.2660658777520084, 1e-15));
  CHECK_THAT(BesselI(1, 1.0).real(), WithinRel(0.5651591039924851, 1e-15));
  CHECK(RelativeError(BesselI(0, 1.0), SeriesOracle(0, 1.0)) <= 1e-15);
  CHECK_THROWS_AS(BesselI(0, 50.5), DomainError);
  CHECK_THROWS_AS(BesselI(0, Complex(0.0, 49.0)), DomainError);
  CHECK_NOTHROW(BesselI(1, 40.0));
  CHECK_THROWS(BesselI(2, 1.0));
}

TEST_CASE("Bessel series matches extended precision", "[analytic]")
{
  // 10 x 10 grid on the square [-1.4, 1.4]^2, all within |x| <= 2.
  double worst = 0.0;
  for (int i = 0; i < 10; i++)
  {
    for (int j = 0; j < 10; j++)
    {
      const std::complex<double> x(-1.4 + 2.8 * i / 9.0, -1.4 + 2.8 * j / 9.0);
      REQUIRE(std::abs(x) <= 2.0);
      for (int nu : {0, 1})
      {
        worst = std::max(worst, RelativeError(BesselI(nu, x), SeriesOracle(nu, x)));
      }
    }
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("Bessel derivative and symmetry", "[analytic]")
{
  const double x = 0.7;
  std::array<double, 2> err;
  for (int k = 0; k < 2; k++)
  {
    const double h = 1e-2 / (1 << k);
    const Complex fd = (BesselI(0, x + h) - BesselI(0, x - h)) / (2.0 * h);
    err[k] = std::abs(fd - BesselI(1, x));
  }
  CHECK_THAT(err[0] / err[1], WithinRel(4.0, 0.01));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int trial = 0; trial < 20; trial++)
  {
    const Complex z(d(rng), d(rng));
    for (int nu : {0, 1})
    {
      CHECK(std::abs(BesselI(nu, std::conj(z)) - std::conj(BesselI(nu, z))) <=
            1e-15 * std::abs(BesselI(nu, z)));
    }
  }
}

TEST_CASE("Electrode parameters", "[analytic]")
{
  ElectrodeParams p;
  const Complex g = p.Gamma();
  CHECK(std::abs(g - Complex(1.0, 1.0) / std::sqrt(2.0)) <= 1e-15);
  CHECK(g.real() > 0.0);
  p.radius = 0.0;
  CHECK_THROWS(p.Validate());
}

TEST_CASE("Electrode field structure", "[analytic]")
{
  ElectrodeParams p;
  p.current = 2.0 - 0.5i;
  const ElectrodeSolution sol(p);
  const double R = p.radius;
  CHECK(sol.H(Eigen::Vector3d(0, 0, 0.3)).norm() == 0.0);
  for (double theta : {0.0, 1.0, 2.5, 4.0})
  {
    const Eigen::Vector3d x(R * std::cos(theta), R * std::sin(theta), 0.5);
    CHECK_THAT(sol.H(x).norm(), WithinRel(std::abs(p.current) / (2.0 * std::numbers::pi * R), 1e-14));
  }
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-0.35, 0.35), dz(0.0, 1.0);
  const ElectrodeSolution flipped(p, -p.Gamma());
  for (int trial = 0; trial < 20; trial++)
  {
    const Eigen::Vector3d x(d(rng), d(rng), dz(rng));
    const Eigen::Vector3cd H = sol.H(x);
    CHECK(std::abs(H(2)) == 0.0);
    CHECK(std::abs(H(0) * x(0) + H(1) * x(1)) <= 1e-15 * H.norm());
    CHECK((flipped.H(x) - H).norm() <= 1e-14 * H.norm());
    CHECK((flipped.E(x) - sol.E(x)).norm() <= 1e-14 * sol.E(x).norm());
  }
  CHECK_THROWS_AS(sol.H(Eigen::Vector3d(0.6, 0, 0.5)), DomainError);
  CHECK_THROWS_AS(sol.E(Eigen::Vector3d(0, 0, 1.2)), DomainError);
}

TEST_CASE("Electrode carries the total current", "[analytic]")
{
  ElectrodeParams p;
  p.current = 1.5 + 0.25i;
  p.omega = 3.0;
  const ElectrodeSolution sol(p);
  // Polar Gauss rule over the disk.
  const auto g = GaussLegendre(20);
  const int n_theta = 16;
  Complex total = 0.0;
  for (std::size_t i = 0; i < g.s.size(); i++)
  {
    const double r = p.radius * g.s[i];
    for (int j = 0; j < n_theta; j++)
    {
      const double theta = 2.0 * std::numbers::pi * j / n_theta;
      const Eigen::Vector3d x(r * std::cos(theta), r * std::sin(theta), 0.5);
      total += g.w[i] * p.radius * (2.0 * std::numbers::pi / n_theta) * r * sol.CurlH(x)(2);
    }
  }
  CHECK(std::abs(total - p.current) <= 1e-8);
}

TEST_CASE("Electrode fields satisfy the eddy current equations", "[analytic]")
{
  ElectrodeParams p;
  p.omega = 2.0;
  p.sigma = 1.5;
  p.mu = 0.8;
  p.current = 1.0 + 1.0i;
  const ElectrodeSolution sol(p);
  auto H = [&](const Eigen::Vector3d &x) { return sol.H(x); };
  auto E = [&](const Eigen::Vector3d &x) { return sol.E(x); };
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(-0.3, 0.3), dz(0.1, 0.9);
  for (int trial = 0; trial < 10; trial++)
  {
    const Eigen::Vector3d x(d(rng), d(rng), dz(rng));
    const Eigen::Vector3cd ampere = FdCurl(H, x, 1e-5) - p.sigma * sol.E(x);
    const Eigen::Vector3cd faraday = Complex(0.0, p.omega * p.mu) * sol.H(x) + FdCurl(E, x, 1e-5);
    CHECK(ampere.norm() <= 1e-6);
    CHECK(faraday.norm() <= 1e-6);
  }
}

} // namespace eddy
