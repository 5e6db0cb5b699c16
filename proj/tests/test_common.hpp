// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_TEST_COMMON_HPP
#define EDDY_TEST_COMMON_HPP

#include <random>
#include "eddy/mesh.hpp"
#include "eddy/nedelec.hpp"

namespace eddy::test
{

inline Mesh ReferenceTet()
{
  return Mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2, 3}});
}

// Cube mesh with vertices moved tangentially so that no symmetry hides sign errors.
inline Mesh PerturbedCube(int n, unsigned seed)
{
  const Mesh cube = GenerateCube(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-0.15 / n, 0.15 / n);
  std::vector<Vec3> v = cube.Vertices();
  for (auto &x : v)
  {
    for (int i = 0; i < 3; i++)
    {
      if (x(i) > 1e-12 && x(i) < 1.0 - 1e-12)
      {
        x(i) += d(rng);
      }
    }
  }
  return Mesh(v, cube.Tets());
}

inline ComplexVector RandomVector(int n, std::mt19937_64 &rng)
{
  std::normal_distribution<double> d;
  ComplexVector v(n);
  for (int i = 0; i < n; i++)
  {
    v(i) = Complex(d(rng), d(rng));
  }
  return v;
}

inline VectorField Constant(const CVec3 &c)
{
  return [c](const Vec3 &) { return c; };
}

inline VectorField Zero()
{
  return Constant(CVec3::Zero());
}

} // namespace eddy::test

#endif // EDDY_TEST_COMMON_HPP
