// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <json.hpp>
#include "eddy/mesh.hpp"

namespace eddy
{

namespace
{

constexpr int kGmshTriangle = 2;
constexpr int kGmshTetrahedron = 4;

void Expect(std::istream &in, const std::string &token)
{
  std::string got;
  if (!(in >> got) || got != token)
  {
    throw MeshError("MSH: expected '" + token + "', found '" + got + "'");
  }
}

void SkipSection(std::istream &in, const std::string &name)
{
  const std::string end = "$End" + name.substr(1);
  std::string token;
  while (in >> token)
  {
    if (token == end)
    {
      return;
    }
  }
  throw MeshError("MSH: unterminated section " + name);
}

} // namespace

Mesh ParseMsh(std::istream &in)
{
  std::string token;
  bool have_format = false;
  std::vector<Vec3> vertices;
  std::unordered_map<long, int> node_index;
  std::vector<std::array<int, 4>> tets;
  while (in >> token)
  {
    if (token == "$MeshFormat")
    {
      std::string version;
      int file_type = -1, data_size = 0;
      in >> version >> file_type >> data_size;
      if (!in || version.rfind("2.", 0) != 0)
      {
        throw MeshError("MSH: unsupported format version '" + version + "' (need 2.2 ASCII)");
      }
      if (file_type != 0)
      {
        throw MeshError("MSH: binary files are not supported");
      }
      Expect(in, "$EndMeshFormat");
      have_format = true;
    }
    else if (token == "$Nodes")
    {
      if (!have_format)
      {
        throw MeshError("MSH: $Nodes before $MeshFormat");
      }
      long count = 0;
      in >> count;
      vertices.reserve(count);
      for (long i = 0; i < count; i++)
      {
        long id;
        Vec3 x;
        if (!(in >> id >> x(0) >> x(1) >> x(2)))
        {
          throw MeshError("MSH: truncated $Nodes section");
        }
        node_index[id] = static_cast<int>(vertices.size());
        vertices.push_back(x);
      }
      Expect(in, "$EndNodes");
    }
    else if (token == "$Elements")
    {
      long count = 0;
      in >> count;
      for (long i = 0; i < count; i++)
      {
        long id;
        int type, ntags;
        if (!(in >> id >> type >> ntags))
        {
          throw MeshError("MSH: truncated $Elements section");
        }
        for (int k = 0; k < ntags; k++)
        {
          long tag;
          in >> tag;
        }
        int nnodes = 0;
        switch (type)
        {
          case 1: nnodes = 2; break;
          case kGmshTriangle: nnodes = 3; break;
          case 3: nnodes = 4; break;
          case kGmshTetrahedron: nnodes = 4; break;
          case 15: nnodes = 1; break;
          default:
            throw MeshError("MSH: unsupported element type " + std::to_string(type));
        }
        std::array<long, 4> ids{};
        for (int k = 0; k < nnodes; k++)
        {
          in >> ids[k];
        }
        if (!in)
        {
          throw MeshError("MSH: truncated element record");
        }
        if (type != kGmshTetrahedron)
        {
          continue;
        }
        std::array<int, 4> tet;
        for (int k = 0; k < 4; k++)
        {
          auto it = node_index.find(ids[k]);
          if (it == node_index.end())
          {
            throw MeshError("MSH: element " + std::to_string(id) + " references unknown node " +
                            std::to_string(ids[k]));
          }
          tet[k] = it->second;
        }
        tets.push_back(tet);
      }
      Expect(in, "$EndElements");
    }
    else if (!token.empty() && token[0] == '$')
    {
      SkipSection(in, token);
    }
    else
    {
      throw MeshError("MSH: unexpected token '" + token + "'");
    }
  }
  if (!have_format)
  {
    throw MeshError("MSH: missing $MeshFormat header");
  }
  return Mesh(std::move(vertices), std::move(tets));
}

Mesh ParseMsh(std::string_view text)
{
  std::istringstream in{std::string(text)};
  return ParseMsh(in);
}

Mesh ReadMsh(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw MeshError("cannot open mesh file " + path);
  }
  return ParseMsh(in);
}

void WriteMsh(const Mesh &mesh, std::ostream &out)
{
  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
  out << "$Nodes\n" << mesh.NumVertices() << "\n";
  out << std::setprecision(17);
  for (int v = 0; v < mesh.NumVertices(); v++)
  {
    const auto &x = mesh.Vertex(v);
    out << v + 1 << " " << x(0) << " " << x(1) << " " << x(2) << "\n";
  }
  out << "$EndNodes\n";
  out << "$Elements\n" << mesh.NumTets() << "\n";
  for (int t = 0; t < mesh.NumTets(); t++)
  {
    const auto &tet = mesh.Tet(t);
    out << t + 1 << " " << kGmshTetrahedron << " 2 0 0";
    for (int v : tet)
    {
      out << " " << v + 1;
    }
    out << "\n";
  }
  out << "$EndElements\n";
}

std::string MeshToJson(const Mesh &mesh)
{
  nlohmann::json j;
  auto &vertices = j["vertices"] = nlohmann::json::array();
  for (const auto &x : mesh.Vertices())
  {
    vertices.push_back({x(0), x(1), x(2)});
  }
  j["tets"] = mesh.Tets();
  auto &bfaces = j["boundary_faces"] = nlohmann::json::array();
  for (const auto &bf : mesh.BoundaryFaces())
  {
    bfaces.push_back(bf.vertices);
  }
  auto &bedges = j["boundary_edges"] = nlohmann::json::array();
  for (int be = 0; be < mesh.NumBoundaryEdges(); be++)
  {
    bedges.push_back(mesh.Edge(mesh.BoundaryEdge(be)));
  }
  j["orientation_fixes"] = mesh.OrientationFixes();
  return j.dump();
}

} // namespace eddy
