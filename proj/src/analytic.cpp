// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "eddy/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace eddy
{

std::complex<double> BesselI(int nu, std::complex<double> x)
{
  if (nu != 0 && nu != 1)
  {
    throw std::invalid_argument("BesselI supports orders 0 and 1 only");
  }
  if (!(std::abs(x) <= kBesselSeriesLimit))
  {
    throw DomainError("BesselI: |x| = " + std::to_string(std::abs(x)) +
                      " is outside the series regime");
  }
  const std::complex<double> q = 0.25 * x * x;
  std::complex<double> term = (nu == 0) ? 1.0 : 0.5 * x;
  std::complex<double> sum = term;
  double largest = std::abs(term);
  for (int m = 1; m < 500; m++)
  {
    term *= q / (double(m) * double(m + nu));
    sum += term;
    largest = std::max(largest, std::abs(term));
    if (std::abs(term) <= 1e-17 * std::abs(sum))
    {
      break;
    }
  }
  // Along the imaginary axis the terms alternate and can cancel far below their size.
  if (std::abs(sum) > 0.0 &&
      largest / std::abs(sum) * std::numeric_limits<double>::epsilon() > 1e-8)
  {
    throw DomainError("BesselI: cancellation in the series at x = (" + std::to_string(x.real()) +
                      ", " + std::to_string(x.imag()) + ")");
  }
  return sum;
}

void ElectrodeParams::Validate() const
{
  if (!(radius > 0.0) || !(height > 0.0))
  {
    throw std::invalid_argument("electrode: radius and height must be positive");
  }
  if (!(sigma > 0.0) || !(mu > 0.0))
  {
    throw std::invalid_argument("electrode: sigma and mu must be positive");
  }
  if (!(omega != 0.0))
  {
    throw std::invalid_argument("electrode: omega must be nonzero");
  }
}

std::complex<double> ElectrodeParams::Gamma() const
{
  return std::sqrt(std::complex<double>(0.0, omega * mu * sigma));
}

ElectrodeSolution::ElectrodeSolution(const ElectrodeParams &params)
  : ElectrodeSolution(params, params.Gamma())
{
}

ElectrodeSolution::ElectrodeSolution(const ElectrodeParams &params, std::complex<double> gamma)
  : params_(params), gamma_(gamma)
{
  params_.Validate();
  i1_boundary_ = BesselI(1, gamma_ * params_.radius);
}

void ElectrodeSolution::CheckDomain(const Eigen::Vector3d &x, double tol) const
{
  const double r = std::hypot(x(0), x(1));
  const double R = params_.radius, L = params_.height;
  if (r > R * (1.0 + tol) || x(2) < -tol * L || x(2) > L * (1.0 + tol))
  {
    throw DomainError("electrode: point outside the cylinder");
  }
}

Eigen::Vector3cd ElectrodeSolution::H(const Eigen::Vector3d &x) const
{
  CheckDomain(x);
  const double r = std::hypot(x(0), x(1));
  if (r == 0.0)
  {
    return Eigen::Vector3cd::Zero();
  }
  const std::complex<double> h = params_.current / (2.0 * std::numbers::pi * params_.radius) *
                                 BesselI(1, gamma_ * r) / i1_boundary_;
  return Eigen::Vector3cd(-h * x(1) / r, h * x(0) / r, 0.0);
}

Eigen::Vector3cd ElectrodeSolution::E(const Eigen::Vector3d &x) const
{
  CheckDomain(x);
  const double r = std::hypot(x(0), x(1));
  const std::complex<double> e =
      params_.current * gamma_ /
      (2.0 * std::numbers::pi * params_.radius * params_.sigma) * BesselI(0, gamma_ * r) /
      i1_boundary_;
  return Eigen::Vector3cd(0.0, 0.0, e);
}

Eigen::Vector3cd ElectrodeSolution::J(const Eigen::Vector3d &x) const
{
  return params_.sigma * E(x);
}

} // namespace eddy
