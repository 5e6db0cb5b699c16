// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <catch_amalgamated.hpp>
#include "eddy/quadrature.hpp"

namespace eddy
{
using Catch::Matchers::WithinAbs;

namespace
{

double Factorial(int n)
{
  return n <= 1 ? 1.0 : n * Factorial(n - 1);
}

// Mean of lambda^a over the reference simplex of dimension d: a! d! / (|a| + d)!.
double SimplexMoment(const std::vector<int> &a)
{
  const int d = static_cast<int>(a.size()) - 1;
  int total = 0;
  double num = Factorial(d);
  for (int ai : a)
  {
    num *= Factorial(ai);
    total += ai;
  }
  return num / Factorial(total + d);
}

} // namespace

TEST_CASE("Line rules integrate polynomials", "[quadrature]")
{
  for (int degree = 0; degree <= 11; degree++)
  {
    const auto rule = LineRuleForDegree(degree);
    double sum = 0.0, wsum = 0.0;
    for (std::size_t q = 0; q < rule.s.size(); q++)
    {
      sum += rule.w[q] * std::pow(rule.s[q], degree);
      wsum += rule.w[q];
    }
    CHECK_THAT(sum, WithinAbs(1.0 / (degree + 1), 1e-14));
    CHECK_THAT(wsum, WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("Triangle rules integrate monomials", "[quadrature]")
{
  for (int degree = 0; degree <= 10; degree++)
  {
    const auto rule = TriangleRuleForDegree(degree);
    for (int a = 0; a <= degree; a++)
    {
      const int b = degree - a;
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.w.size(); q++)
      {
        sum += rule.w[q] * std::pow(rule.lambda[q][1], a) * std::pow(rule.lambda[q][2], b);
      }
      CHECK_THAT(sum, WithinAbs(SimplexMoment({0, a, b}), 1e-14));
    }
  }
  const auto r7 = TriangleRule7();
  for (int a = 0; a <= 5; a++)
  {
    for (int b = 0; a + b <= 5; b++)
    {
      double sum = 0.0;
      for (std::size_t q = 0; q < r7.w.size(); q++)
      {
        sum += r7.w[q] * std::pow(r7.lambda[q][0], a) * std::pow(r7.lambda[q][1], b);
      }
      CHECK_THAT(sum, WithinAbs(SimplexMoment({a, b, 0}), 1e-15));
    }
  }
}

TEST_CASE("Tetrahedron rules integrate monomials", "[quadrature]")
{
  for (int degree = 0; degree <= 8; degree++)
  {
    const auto rule = TetRuleForDegree(degree);
    for (int a = 0; a <= degree; a++)
    {
      for (int b = 0; a + b <= degree; b++)
      {
        const int c = degree - a - b;
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.w.size(); q++)
        {
          const auto &l = rule.lambda[q];
          sum += rule.w[q] * std::pow(l[0], a) * std::pow(l[1], b) * std::pow(l[3], c);
        }
        CHECK_THAT(sum, WithinAbs(SimplexMoment({a, b, 0, c}), 1e-14));
      }
    }
  }
}

} // namespace eddy
