// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "eddy/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eddy
{

double RealDerivative(const ComplexVector &G, const ComplexVector &xi)
{
  return 2.0 * xi.dot(G).real();
}

ComplexVector SteepestDescentDirection(const ComplexVector &G)
{
  return -G;
}

Eigen::VectorXd Stack(const ComplexVector &z)
{
  Eigen::VectorXd x(2 * z.size());
  x.head(z.size()) = z.real();
  x.tail(z.size()) = z.imag();
  return x;
}

ComplexVector Unstack(const Eigen::VectorXd &x)
{
  const Eigen::Index n = x.size() / 2;
  ComplexVector z(n);
  z.real() = x.head(n);
  z.imag() = x.tail(n);
  return z;
}

ReducedProblem::ReducedProblem(const StateOperator &op, const ProblemConfig &config, bool tracking)
  : op_(&op), alpha_(config.alpha), beta_(config.beta), tracking_(tracking)
{
  const FESpace &space = op.Space();
  // One rule for the Gram matrix, the target moments and |u_d|^2, so that J1 is a
  // quadrature of |u_h - u_d|^2 and stays nonnegative.
  const int degree = 2 * space.Order() + 4;
  M0_ = AssembleMass(space, TensorField::Scalar(1.0), degree);
  desired_moments_ = AssembleLoad(space, config.desired, degree);
  desired_norm2_ = L2NormSquared(space.GetMesh(), config.desired, degree);
  K_ = SurfaceCurlMatrix(op.Control());
  M_ = SurfaceMassMatrix(op.Control());
}

ComplexVector ReducedProblem::Residual(const ComplexVector &u) const
{
  return M0_ * u - desired_moments_;
}

CostReport ReducedProblem::Cost(const ComplexVector &z) const
{
  return Cost(z, op_->Solve(z));
}

CostReport ReducedProblem::Cost(const ComplexVector &z, const ComplexVector &u) const
{
  CostReport report;
  if (tracking_)
  {
    const double uMu = u.dot(M0_ * u).real();
    const double cross = u.dot(desired_moments_).real();
    report.J1 = 0.5 * (uMu - 2.0 * cross + desired_norm2_);
  }
  report.J2 = 0.5 * alpha_ * z.dot(K_ * z).real();
  report.J3 = 0.5 * beta_ * z.dot(M_ * z).real();
  report.J = report.J1 + report.J2 + report.J3;
  return report;
}

ReducedGradient ReducedProblem::Gradient(const ComplexVector &z, CostReport *report) const
{
  ReducedGradient g;
  const ComplexVector u = op_->Solve(z);
  if (tracking_)
  {
    const AdjointState adj = op_->SolveAdjoint(Residual(u));
    g.tracking = 0.5 * op_->AdjointActionVector(adj);
  }
  else
  {
    g.tracking = ComplexVector::Zero(z.size());
  }
  g.curl_term = (0.5 * alpha_) * (K_ * z);
  g.mass_term = (0.5 * beta_) * (M_ * z);
  g.G = g.tracking + g.curl_term + g.mass_term;
  if (report)
  {
    *report = Cost(z, u);
    report->grad_norm = g.G.norm();
  }
  return g;
}

ComplexObjective ReducedProblem::Objective() const
{
  return [this](const ComplexVector &z, ComplexVector *G) {
    if (!G)
    {
      return Cost(z).J;
    }
    CostReport report;
    *G = Gradient(z, &report).G;
    return report.J;
  };
}

FdReport FdCheck(const std::function<double(const ComplexVector &)> &f, double derivative,
                 const ComplexVector &z, const ComplexVector &xi, const std::vector<double> &t_list)
{
  FdReport report;
  report.derivative = derivative;
  const double f0 = f(z);
  for (double t : t_list)
  {
    const double q = (f(z + t * xi) - f0) / t;
    const double err = std::abs(derivative - q);
    report.rows.push_back({t, q, err, derivative != 0.0 ? err / std::abs(derivative) : err});
  }
  FitFdSlope(report);
  return report;
}

void FitFdSlope(FdReport &report)
{
  auto &rows = report.rows;
  std::sort(rows.begin(), rows.end(), [](const FdRow &a, const FdRow &b) { return a.t > b.t; });
  report.floor = std::numeric_limits<double>::infinity();
  for (const auto &r : rows)
  {
    report.floor = std::min(report.floor, r.relative);
  }
  report.slope = 0.0;
  report.decades = 0.0;
  report.decay_begin = report.decay_end = 0;
  if (rows.empty())
  {
    return;
  }
  // Skip leading exact zeros, then extend while the local slope stays above 1/2.
  int begin = 0;
  while (begin < static_cast<int>(rows.size()) && !(rows[begin].error > 0.0))
  {
    begin++;
  }
  int end = begin + 1;
  while (end < static_cast<int>(rows.size()) && rows[end].error > 0.0)
  {
    const double local = std::log(rows[end - 1].error / rows[end].error) /
                         std::log(rows[end - 1].t / rows[end].t);
    if (!(local >= 0.5))
    {
      break;
    }
    end++;
  }
  report.decay_begin = begin;
  report.decay_end = std::min<int>(end, rows.size());
  const int n = report.decay_end - report.decay_begin;
  if (n < 2)
  {
    return;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = report.decay_begin; i < report.decay_end; i++)
  {
    const double x = std::log(rows[i].t), y = std::log(rows[i].error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  report.decades = std::log10(rows[report.decay_begin].t / rows[report.decay_end - 1].t);
}

namespace
{

struct LinePoint
{
  double alpha, value, slope;
  Eigen::VectorXd g;
};

// Minimizer of the cubic through (a, fa, da), (b, fb, db), safeguarded into the interior.
double CubicStep(const LinePoint &a, const LinePoint &b)
{
  const double lo = std::min(a.alpha, b.alpha), hi = std::max(a.alpha, b.alpha);
  const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.slope * b.slope;
  double step = 0.5 * (lo + hi);
  if (disc >= 0.0)
  {
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom != 0.0)
    {
      const double c = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
      if (std::isfinite(c))
      {
        step = c;
      }
    }
  }
  const double margin = 0.1 * (hi - lo);
  return std::clamp(step, lo + margin, hi - margin);
}

} // namespace

BfgsResult BfgsMinimize(const ComplexObjective &f, const ComplexVector &z0,
                        const BfgsOptions &options,
                        const std::function<void(const BfgsIterate &)> &callback)
{
  if (!(options.tolerance > 0.0))
  {
    throw std::invalid_argument("BFGS tolerance must be positive");
  }
  const Eigen::Index n = 2 * z0.size();
  BfgsResult result;

  // Real objective: value and gradient Stack(2 G).
  ComplexVector G;
  auto evaluate = [&](const Eigen::VectorXd &x, Eigen::VectorXd &g) {
    result.evaluations++;
    const double v = f(Unstack(x), &G);
    g = Stack(2.0 * G);
    return v;
  };

  Eigen::VectorXd x = Stack(z0), g;
  double value = evaluate(x, g);
  double gnorm = 0.5 * g.norm();
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;

  auto record = [&](int it, double step, bool reset) {
    BfgsIterate rec{it, value, gnorm, step, reset};
    result.history.push_back(rec);
    if (callback)
    {
      callback(rec);
    }
  };
  record(0, 0.0, false);

  auto finish = [&](bool converged, std::string message) {
    result.z = Unstack(x);
    result.G = Unstack(0.5 * g);
    result.value = value;
    result.converged = converged;
    result.message = std::move(message);
    return result;
  };

  for (int it = 1;; it++)
  {
    if (!std::isfinite(value) || !std::isfinite(gnorm))
    {
      return finish(false, "non-finite objective or gradient");
    }
    if (gnorm <= options.tolerance)
    {
      return finish(true, "gradient tolerance reached");
    }
    if (it > options.max_iterations)
    {
      return finish(false, "iteration limit reached");
    }

    Eigen::VectorXd p = -(H * g);
    bool reset = false;
    double slope0 = g.dot(p);
    if (!(slope0 < 0.0))
    {
      H.setIdentity();
      scaled = false;
      p = -g;
      slope0 = g.dot(p);
      reset = true;
    }

    // Strong Wolfe line search.
    const LinePoint start{0.0, value, slope0, g};
    auto probe = [&](double alpha) {
      LinePoint pt;
      pt.alpha = alpha;
      pt.value = evaluate(x + alpha * p, pt.g);
      pt.slope = pt.g.dot(p);
      return pt;
    };
    auto armijo = [&](const LinePoint &pt) {
      return pt.value <= value + options.c1 * pt.alpha * slope0;
    };
    auto curvature = [&](const LinePoint &pt) {
      return std::abs(pt.slope) <= -options.c2 * slope0;
    };

    std::optional<LinePoint> accepted;
    int evals = 0;
    auto zoom = [&](LinePoint lo, LinePoint hi) {
      while (evals < options.max_line_search)
      {
        const LinePoint pt = probe(CubicStep(lo, hi));
        evals++;
        if (!armijo(pt) || pt.value >= lo.value)
        {
          hi = pt;
        }
        else
        {
          if (curvature(pt))
          {
            accepted = pt;
            return;
          }
          if (pt.slope * (hi.alpha - lo.alpha) >= 0.0)
          {
            hi = lo;
          }
          lo = pt;
        }
        if (std::abs(hi.alpha - lo.alpha) <= 1e-16 * std::max(1.0, std::abs(lo.alpha)))
        {
          return;
        }
      }
    };

    double alpha = scaled ? 1.0 : std::min(1.0, 1.0 / g.norm());
    LinePoint prev = start;
    while (!accepted && evals < options.max_line_search)
    {
      const LinePoint pt = probe(alpha);
      evals++;
      if (!armijo(pt) || (evals > 1 && pt.value >= prev.value))
      {
        zoom(prev, pt);
        break;
      }
      if (curvature(pt))
      {
        accepted = pt;
        break;
      }
      if (pt.slope >= 0.0)
      {
        zoom(pt, prev);
        break;
      }
      prev = pt;
      alpha *= 4.0;
    }
    if (!accepted)
    {
      // Restore the gradient of the current iterate for the report.
      return finish(false, "line search failed at iteration " + std::to_string(it));
    }

    const Eigen::VectorXd s = accepted->alpha * p;
    const Eigen::VectorXd y = accepted->g - g;
    x += s;
    g = accepted->g;
    value = accepted->value;
    gnorm = 0.5 * g.norm();

    const double sy = s.dot(y);
    if (sy > 0.0)
    {
      if (!scaled)
      {
        H *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd Hy = H * y;
      const double yHy = y.dot(Hy);
      H.noalias() -= rho * (Hy * s.transpose() + s * Hy.transpose());
      H.noalias() += (rho * rho * yHy + rho) * (s * s.transpose());
    }
    record(it, accepted->alpha, reset);
  }
}

OptimizationResult Minimize(const ReducedProblem &problem, const ComplexVector &z0,
                            const BfgsOptions &options)
{
  OptimizationResult out;
  CostReport last;
  auto objective = [&](const ComplexVector &z, ComplexVector *G) {
    const ReducedGradient g = problem.Gradient(z, &last);
    if (G)
    {
      *G = g.G;
    }
    return last.J;
  };
  auto callback = [&](const BfgsIterate &it) {
    CostReport r = last;
    r.iteration = it.iteration;
    r.grad_norm = it.grad_norm;
    r.step = it.step;
    out.history.push_back(r);
  };
  const BfgsResult res = BfgsMinimize(objective, z0, options, callback);
  out.z = res.z;
  out.final = out.history.back();
  out.converged = res.converged;
  out.message = res.message;
  out.evaluations = res.evaluations;
  return out;
}

} // namespace eddy
