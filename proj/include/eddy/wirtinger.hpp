// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_WIRTINGER_HPP
#define EDDY_WIRTINGER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>
#include "eddy/solver.hpp"

namespace eddy
{

class LineSearchError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Real-valued function of complex coefficients together with its conjugate derivative
// G = df/dconj(z), so that the R-linear derivative is d f(z; xi) = 2 Re(xi^H G).
using ComplexObjective = std::function<double(const ComplexVector &z, ComplexVector *G)>;

// 2 Re(xi^H G).
double RealDerivative(const ComplexVector &G, const ComplexVector &xi);

// Steepest descent direction -G.
ComplexVector SteepestDescentDirection(const ComplexVector &G);

// Stacked real coordinates (Re z, Im z) and back. The real gradient of f is Stack(2 G).
Eigen::VectorXd Stack(const ComplexVector &z);
ComplexVector Unstack(const Eigen::VectorXd &x);

struct CostReport
{
  double J = 0.0;
  double J1 = 0.0; // 1/2 |u_h - u_d|^2
  double J2 = 0.0; // alpha/2 |curl_G z|^2
  double J3 = 0.0; // beta/2 |z|^2
  int iteration = 0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct ReducedGradient
{
  ComplexVector G;
  ComplexVector tracking;       // 1/2 h, h the adjoint action vector
  ComplexVector curl_term;      // alpha/2 K z
  ComplexVector mass_term;      // beta/2 M z
};

//
// Reduced functional j(z) = J(S z, z) on a fixed mesh. The tracking term uses the plain
// L2 Gram matrix, so J1 = 1/2 (u^H M u - 2 Re(u^H d) + |u_d|^2) with d = (u_d, phi_i).
//
class ReducedProblem
{
public:
  ReducedProblem(const StateOperator &op, const ProblemConfig &config, bool tracking = true);

  const StateOperator &Operator() const { return *op_; }
  const RealSparse &CurlMatrix() const { return K_; }
  const RealSparse &ControlMass() const { return M_; }
  const RealSparse &FieldMass() const { return M0_; }
  double Alpha() const { return alpha_; }
  double Beta() const { return beta_; }
  int Size() const { return op_->Control().Size(); }

  CostReport Cost(const ComplexVector &z) const;
  CostReport Cost(const ComplexVector &z, const ComplexVector &u) const;
  // One state and one adjoint solve.
  ReducedGradient Gradient(const ComplexVector &z, CostReport *report = nullptr) const;

  // Residual moments (u - u_d, phi_i).
  ComplexVector Residual(const ComplexVector &u) const;

  ComplexObjective Objective() const;

private:
  const StateOperator *op_;
  double alpha_, beta_;
  bool tracking_;
  RealSparse M0_, K_, M_;
  ComplexVector desired_moments_;
  double desired_norm2_ = 0.0;
};

//
// Finite-difference check of d f(z; xi) along real steps t.
//
struct FdRow
{
  double t;
  double quotient;
  double error;     // |d f - (f(z + t xi) - f(z)) / t|
  double relative;  // error / |d f|, or error when d f = 0
};

struct FdReport
{
  double derivative = 0.0;
  std::vector<FdRow> rows;
  // Least-squares slope of log(error) against log(t) over the decay region.
  double slope = 0.0;
  int decay_begin = 0, decay_end = 0; // [begin, end) into rows
  double decades = 0.0;
  double floor = 0.0; // smallest relative error
};

FdReport FdCheck(const std::function<double(const ComplexVector &)> &f, double derivative,
                 const ComplexVector &z, const ComplexVector &xi, const std::vector<double> &t_list);

// Rows sorted by decreasing t; fills slope, decay region, decades and floor.
void FitFdSlope(FdReport &report);

//
// BFGS on the stacked real coordinates, strong Wolfe line search.
//
struct BfgsOptions
{
  double tolerance = 1e-9; // on |G|
  int max_iterations = 1000;
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search = 60;
};

struct BfgsIterate
{
  int iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
  bool reset = false; // direction fell back to steepest descent
};

struct BfgsResult
{
  ComplexVector z;
  ComplexVector G;
  double value = 0.0;
  bool converged = false;
  std::string message;
  std::vector<BfgsIterate> history; // iterate 0 is the starting point
  int evaluations = 0;
};

// The callback runs after every accepted iterate, including the starting point; the last
// objective evaluation before it is always at the accepted point.
BfgsResult BfgsMinimize(const ComplexObjective &f, const ComplexVector &z0,
                        const BfgsOptions &options = {},
                        const std::function<void(const BfgsIterate &)> &callback = {});

struct OptimizationResult
{
  ComplexVector z;
  CostReport final;
  std::vector<CostReport> history;
  bool converged = false;
  std::string message;
  int evaluations = 0;
};

OptimizationResult Minimize(const ReducedProblem &problem, const ComplexVector &z0,
                            const BfgsOptions &options = {});

} // namespace eddy

#endif // EDDY_WIRTINGER_HPP
