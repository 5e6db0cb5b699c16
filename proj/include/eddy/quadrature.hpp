// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_QUADRATURE_HPP
#define EDDY_QUADRATURE_HPP

#include <array>
#include <vector>

namespace eddy
{

// Points are given in barycentric coordinates; weights sum to one, so an integral is
// the element measure times the weighted sum.
struct LineRule
{
  std::vector<double> s; // Parameter in [0, 1].
  std::vector<double> w;
};

struct TriangleRule
{
  std::vector<std::array<double, 3>> lambda;
  std::vector<double> w;
};

struct TetRule
{
  std::vector<std::array<double, 4>> lambda;
  std::vector<double> w;
};

// Gauss-Legendre with n points on [0, 1].
LineRule GaussLegendre(int n);

// Collapsed (Duffy) tensor Gauss rules, exact for polynomials of the given total degree.
LineRule LineRuleForDegree(int degree);
TriangleRule TriangleRuleForDegree(int degree);
TetRule TetRuleForDegree(int degree);

// 7-point degree-5 rule (Radon).
TriangleRule TriangleRule7();

} // namespace eddy

#endif // EDDY_QUADRATURE_HPP
