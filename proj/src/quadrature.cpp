// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "eddy/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eddy
{

LineRule GaussLegendre(int n)
{
  if (n < 1)
  {
    throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  }
  LineRule rule;
  rule.s.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; i++)
  {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; k++)
      {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; k++)
    {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.s[i] = 0.5 * (1.0 - x);
    rule.w[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

LineRule LineRuleForDegree(int degree)
{
  return GaussLegendre(std::max(1, (degree + 2) / 2));
}

TriangleRule TriangleRuleForDegree(int degree)
{
  // x = u, y = v (1 - u), Jacobian (1 - u): degree + 1 in u.
  const auto g = GaussLegendre(std::max(1, (degree + 3) / 2));
  TriangleRule rule;
  for (std::size_t i = 0; i < g.s.size(); i++)
  {
    for (std::size_t j = 0; j < g.s.size(); j++)
    {
      const double u = g.s[i], v = g.s[j];
      const double x = u, y = v * (1.0 - u);
      rule.lambda.push_back({1.0 - x - y, x, y});
      rule.w.push_back(2.0 * g.w[i] * g.w[j] * (1.0 - u));
    }
  }
  return rule;
}

TetRule TetRuleForDegree(int degree)
{
  // x = u, y = v (1 - u), z = w (1 - u)(1 - v), Jacobian (1 - u)^2 (1 - v).
  const auto g = GaussLegendre(std::max(1, (degree + 4) / 2));
  TetRule rule;
  for (std::size_t i = 0; i < g.s.size(); i++)
  {
    for (std::size_t j = 0; j < g.s.size(); j++)
    {
      for (std::size_t k = 0; k < g.s.size(); k++)
      {
        const double u = g.s[i], v = g.s[j], w = g.s[k];
        const double x = u, y = v * (1.0 - u), z = w * (1.0 - u) * (1.0 - v);
        rule.lambda.push_back({1.0 - x - y - z, x, y, z});
        rule.w.push_back(6.0 * g.w[i] * g.w[j] * g.w[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
      }
    }
  }
  return rule;
}

TriangleRule TriangleRule7()
{
  const double r15 = std::sqrt(15.0);
  const double a = (6.0 - r15) / 21.0, b = (9.0 + 2.0 * r15) / 21.0;
  const double c = (6.0 + r15) / 21.0, d = (9.0 - 2.0 * r15) / 21.0;
  const double wa = (155.0 - r15) / 1200.0, wc = (155.0 + r15) / 1200.0;
  TriangleRule rule;
  rule.lambda = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                 {a, a, b}, {a, b, a}, {b, a, a},
                 {c, c, d}, {c, d, c}, {d, c, c}};
  rule.w = {9.0 / 40.0, wa, wa, wa, wc, wc, wc};
  return rule;
}

} // namespace eddy
