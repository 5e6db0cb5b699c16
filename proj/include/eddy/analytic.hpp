// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_ANALYTIC_HPP
#define EDDY_ANALYTIC_HPP

#include <complex>
#include <stdexcept>
#include <Eigen/Dense>

namespace eddy
{

class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

// Largest |x| accepted by the power series.
inline constexpr double kBesselSeriesLimit = 50.0;

// Modified Bessel function of the first kind I_nu(x), nu in {0, 1}, by its power series.
std::complex<double> BesselI(int nu, std::complex<double> x);

// Electrode in a cylinder {x^2 + y^2 <= R^2, 0 <= z <= L} carrying total current iota.
struct ElectrodeParams
{
  std::complex<double> current = 1.0;
  double omega = 1.0;
  double mu = 1.0;
  double sigma = 1.0;
  double radius = 0.5;
  double height = 1.0;

  void Validate() const;
  // Principal square root of i omega mu sigma.
  std::complex<double> Gamma() const;
};

//
// Closed-form fields: H = iota / (2 pi R) I_1(g r) / I_1(g R) e_theta,
// E = iota g / (2 pi R sigma) I_0(g r) / I_1(g R) e_z, J = sigma E = curl H.
//
class ElectrodeSolution
{
public:
  explicit ElectrodeSolution(const ElectrodeParams &params);
  // Uses -gamma in place of gamma; the fields must not change.
  ElectrodeSolution(const ElectrodeParams &params, std::complex<double> gamma);

  const ElectrodeParams &Params() const { return params_; }
  std::complex<double> Gamma() const { return gamma_; }

  Eigen::Vector3cd H(const Eigen::Vector3d &x) const;
  Eigen::Vector3cd E(const Eigen::Vector3d &x) const;
  Eigen::Vector3cd J(const Eigen::Vector3d &x) const;
  Eigen::Vector3cd CurlH(const Eigen::Vector3d &x) const { return J(x); }

  // Throws DomainError outside the closed cylinder (relative slack tol).
  void CheckDomain(const Eigen::Vector3d &x, double tol = 1e-9) const;

private:
  ElectrodeParams params_;
  std::complex<double> gamma_;
  std::complex<double> i1_boundary_;
};

} // namespace eddy

#endif // EDDY_ANALYTIC_HPP
