// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include "eddy/mesh.hpp"

namespace eddy
{

Mesh GenerateCube(int n)
{
  if (n < 1)
  {
    throw MeshError("cube generator needs n >= 1");
  }
  const int m = n + 1;
  auto id = [m](int i, int j, int k) { return i + m * (j + m * k); };
  std::vector<Vec3> vertices;
  vertices.reserve(m * m * m);
  for (int k = 0; k < m; k++)
  {
    for (int j = 0; j < m; j++)
    {
      for (int i = 0; i < m; i++)
      {
        vertices.emplace_back(double(i) / n, double(j) / n, double(k) / n);
      }
    }
  }
  // Kuhn triangulation: one tet per axis permutation, all sharing the main diagonal.
  static constexpr std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::array<int, 4>> tets;
  tets.reserve(6 * n * n * n);
  for (int k = 0; k < n; k++)
  {
    for (int j = 0; j < n; j++)
    {
      for (int i = 0; i < n; i++)
      {
        for (const auto &p : perms)
        {
          std::array<int, 3> c = {i, j, k};
          std::array<int, 4> tet;
          tet[0] = id(c[0], c[1], c[2]);
          for (int s = 0; s < 3; s++)
          {
            c[p[s]]++;
            tet[s + 1] = id(c[0], c[1], c[2]);
          }
          tets.push_back(tet);
        }
      }
    }
  }
  return Mesh(std::move(vertices), std::move(tets));
}

Mesh GenerateCylinder(double radius, double height, int n_r, int n_theta, int n_z)
{
  if (!(radius > 0.0) || !(height > 0.0))
  {
    throw MeshError("cylinder generator needs positive radius and height");
  }
  if (n_r < 1 || n_theta < 3 || n_z < 1)
  {
    throw MeshError("cylinder generator needs n_r >= 1, n_theta >= 3, n_z >= 1");
  }

  // Structured disk: vertex 0 at the center, ring i (1..n_r) has n_theta vertices.
  const int per_layer = 1 + n_r * n_theta;
  auto ring = [&](int i, int j) { return i == 0 ? 0 : 1 + (i - 1) * n_theta + (j % n_theta); };
  std::vector<std::array<int, 3>> triangles;
  for (int j = 0; j < n_theta; j++)
  {
    triangles.push_back({ring(0, 0), ring(1, j), ring(1, j + 1)});
  }
  for (int i = 1; i < n_r; i++)
  {
    for (int j = 0; j < n_theta; j++)
    {
      triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  }

  std::vector<Vec3> vertices;
  vertices.reserve(per_layer * (n_z + 1));
  for (int k = 0; k <= n_z; k++)
  {
    const double z = height * k / n_z;
    vertices.emplace_back(0.0, 0.0, z);
    for (int i = 1; i <= n_r; i++)
    {
      // The outer ring is placed exactly on the radius.
      const double r = (i == n_r) ? radius : radius * i / n_r;
      for (int j = 0; j < n_theta; j++)
      {
        const double theta = 2.0 * std::numbers::pi * j / n_theta;
        vertices.emplace_back(r * std::cos(theta), r * std::sin(theta), z);
      }
    }
  }

  // Each prism is split by connecting, on every quad side, the lower-id bottom vertex to
  // the higher-id top vertex. Neighboring prisms see the same ordering, so the split
  // is conforming.
  std::vector<std::array<int, 4>> tets;
  tets.reserve(3 * triangles.size() * n_z);
  for (int k = 0; k < n_z; k++)
  {
    const int bottom = k * per_layer, top = (k + 1) * per_layer;
    for (auto tri : triangles)
    {
      std::sort(tri.begin(), tri.end());
      const int a = bottom + tri[0], b = bottom + tri[1], c = bottom + tri[2];
      const int at = top + tri[0], bt = top + tri[1], ct = top + tri[2];
      tets.push_back({a, b, c, ct});
      tets.push_back({a, b, bt, ct});
      tets.push_back({a, at, bt, ct});
    }
  }
  return Mesh(std::move(vertices), std::move(tets));
}

} // namespace eddy
