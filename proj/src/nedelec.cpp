// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "eddy/nedelec.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace eddy
{

namespace
{

// One term c * lambda_a * lambda_b * grad(lambda_g); a or b is -1 when absent.
struct Term
{
  double c;
  int a, b, g;
};
using SpanFunction = std::vector<Term>;

std::vector<SpanFunction> BuildSpanningSet(int order)
{
  std::vector<SpanFunction> set;
  for (const auto &[i, j] : kTetEdges)
  {
    set.push_back({{1.0, i, -1, j}, {-1.0, j, -1, i}});
  }
  if (order == 0)
  {
    return set;
  }
  for (const auto &[i, j] : kTetEdges)
  {
    set.push_back({{1.0, i, -1, j}, {1.0, j, -1, i}});
  }
  for (int v = 0; v < 4; v++)
  {
    std::array<int, 3> f;
    for (int k = 0, n = 0; k < 4; k++)
    {
      if (k != v)
      {
        f[n++] = k;
      }
    }
    const int a = f[0], b = f[1], c = f[2];
    set.push_back({{1.0, a, b, c}, {-1.0, a, c, b}});
    set.push_back({{1.0, b, c, a}, {-1.0, b, a, c}});
  }
  return set;
}

const std::vector<SpanFunction> &SpanningSet(int order)
{
  static const std::vector<SpanFunction> s0 = BuildSpanningSet(0);
  static const std::vector<SpanFunction> s1 = BuildSpanningSet(1);
  return order == 0 ? s0 : s1;
}

// Exact rules for the element moment matrix (integrands of degree <= 3 on edges, <= 2
// on faces).
const LineRule &MomentLineRule()
{
  static const LineRule rule = LineRuleForDegree(3);
  return rule;
}

const TriangleRule &MomentTriangleRule()
{
  static const TriangleRule rule = TriangleRuleForDegree(2);
  return rule;
}

// Rules for moments of general smooth fields.
const LineRule &InterpLineRule()
{
  static const LineRule rule = LineRuleForDegree(11);
  return rule;
}

const TriangleRule &InterpTriangleRule()
{
  static const TriangleRule rule = TriangleRuleForDegree(10);
  return rule;
}

double EdgeWeight(int m, double s)
{
  return m == 0 ? 1.0 : 2.0 * s - 1.0;
}

Complex Dot(const CVec3 &v, const Vec3 &t)
{
  return v(0) * t(0) + v(1) * t(1) + v(2) * t(2);
}

// Local vertex indices of local face i, sorted by global vertex id.
std::array<int, 3> SortedFaceVertices(const std::array<int, 4> &tet, int i)
{
  std::array<int, 3> f;
  for (int k = 0, n = 0; k < 4; k++)
  {
    if (k != i)
    {
      f[n++] = k;
    }
  }
  std::sort(f.begin(), f.end(), [&](int x, int y) { return tet[x] < tet[y]; });
  return f;
}

} // namespace

TensorField TensorField::Scalar(double value)
{
  return Constant(value * Eigen::Matrix3d::Identity());
}

TensorField TensorField::Constant(const Eigen::Matrix3d &value)
{
  TensorField t;
  t.value_ = value;
  return t;
}

TensorField TensorField::Function(std::function<Eigen::Matrix3d(const Vec3 &)> f)
{
  TensorField t;
  t.f_ = std::move(f);
  return t;
}

void CheckSpd(const Eigen::Matrix3d &m, const char *name)
{
  if (!m.allFinite())
  {
    throw AssemblyError(std::string(name) + " has non-finite entries");
  }
  if ((m - m.transpose()).norm() > 1e-12 * m.norm())
  {
    throw AssemblyError(std::string(name) + " is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0))
  {
    throw AssemblyError(std::string(name) + " is not positive definite (min eigenvalue " +
                        std::to_string(eig.eigenvalues().minCoeff()) + ")");
  }
}

void ProblemConfig::Validate() const
{
  if (!(omega != 0.0) || !std::isfinite(omega))
  {
    throw std::invalid_argument("omega must be finite and nonzero");
  }
  if (!(alpha >= 0.0) || !(beta >= 0.0))
  {
    throw std::invalid_argument("regularization weights must be nonnegative");
  }
  if (alpha == 0.0 && beta == 0.0)
  {
    throw std::invalid_argument("alpha and beta must not both be zero");
  }
  if (!(solver_tolerance > 0.0))
  {
    throw std::invalid_argument("solver tolerance must be positive");
  }
  if (mu.IsConstant())
  {
    CheckSpd(mu(Vec3::Zero()), "mu");
  }
  if (kappa.IsConstant())
  {
    CheckSpd(kappa(Vec3::Zero()), "kappa");
  }
}

FESpace::FESpace(const Mesh &mesh, int order) : mesh_(&mesh), order_(order)
{
  if (order != 0 && order != 1)
  {
    throw std::invalid_argument("Nedelec order must be 0 or 1, got " + std::to_string(order));
  }
  if (mesh.NumTets() == 0)
  {
    throw std::invalid_argument("FESpace needs a nonempty mesh");
  }
  for (int e = 0; e < mesh.NumEdges(); e++)
  {
    for (int m = 0; m < EdgeMoments(); m++)
    {
      dofs_.push_back({EntityKind::Edge, e, m});
    }
  }
  for (int f = 0; f < mesh.NumFaces() && FaceMoments() > 0; f++)
  {
    for (int m = 0; m < FaceMoments(); m++)
    {
      dofs_.push_back({EntityKind::Face, f, m});
    }
  }
  boundary_pos_.assign(dofs_.size(), -1);
  interior_pos_.assign(dofs_.size(), -1);
  for (int d = 0; d < Size(); d++)
  {
    const auto &dof = dofs_[d];
    const bool on_boundary = dof.kind == EntityKind::Edge
                                 ? mesh.BoundaryEdgeIndex(dof.entity) >= 0
                                 : mesh.BoundaryFaceIndex(dof.entity) >= 0;
    if (on_boundary)
    {
      boundary_pos_[d] = static_cast<int>(boundary_dofs_.size());
      boundary_dofs_.push_back(d);
    }
    else
    {
      interior_pos_[d] = static_cast<int>(interior_dofs_.size());
      interior_dofs_.push_back(d);
    }
  }
}

std::vector<int> FESpace::ElementDofs(int t) const
{
  std::vector<int> dofs;
  dofs.reserve(LocalSize());
  const auto &edges = mesh_->TetEdges(t);
  for (int l = 0; l < 6; l++)
  {
    for (int m = 0; m < EdgeMoments(); m++)
    {
      dofs.push_back(EdgeDof(edges[l], m));
    }
  }
  const auto &faces = mesh_->TetFaces(t);
  for (int i = 0; i < 4 && FaceMoments() > 0; i++)
  {
    for (int m = 0; m < FaceMoments(); m++)
    {
      dofs.push_back(FaceDof(faces[i], m));
    }
  }
  return dofs;
}

ElementBasis::ElementBasis(const FESpace &space, int tet)
  : order_(space.Order()), size_(space.LocalSize())
{
  const Mesh &mesh = space.GetMesh();
  const auto &ids = mesh.Tet(tet);
  for (int i = 0; i < 4; i++)
  {
    vertices_[i] = mesh.Vertex(ids[i]);
  }
  Eigen::Matrix3d J;
  J.col(0) = vertices_[1] - vertices_[0];
  J.col(1) = vertices_[2] - vertices_[0];
  J.col(2) = vertices_[3] - vertices_[0];
  volume_ = J.determinant() / 6.0;
  const Eigen::Matrix3d Jinv = J.inverse();
  grad_[0].setZero();
  for (int i = 1; i < 4; i++)
  {
    grad_[i] = Jinv.row(i - 1).transpose();
    grad_[0] -= grad_[i];
  }

  // D(d, m) = dof_d(s_m); the nodal basis is the spanning set times D^-1.
  Eigen::MatrixXd D(size_, size_);
  Eigen::Matrix3Xd values, curls;
  const int nm = space.EdgeMoments();
  const auto &line = MomentLineRule();
  for (int l = 0; l < 6; l++)
  {
    auto [lo, hi] = kTetEdges[l];
    if (ids[lo] > ids[hi])
    {
      std::swap(lo, hi);
    }
    const Vec3 t = (vertices_[hi] - vertices_[lo]).normalized();
    for (int m = 0; m < nm; m++)
    {
      D.row(l * nm + m).setZero();
    }
    for (std::size_t q = 0; q < line.s.size(); q++)
    {
      std::array<double, 4> lambda{};
      lambda[lo] = 1.0 - line.s[q];
      lambda[hi] = line.s[q];
      EvalSpanning(lambda, values, curls);
      const Eigen::RowVectorXd tv = t.transpose() * values;
      for (int m = 0; m < nm; m++)
      {
        D.row(l * nm + m) += line.w[q] * EdgeWeight(m, line.s[q]) * tv;
      }
    }
  }
  if (order_ == 1)
  {
    const auto &tri = MomentTriangleRule();
    for (int i = 0; i < 4; i++)
    {
      const auto f = SortedFaceVertices(ids, i);
      const Vec3 t0 = (vertices_[f[1]] - vertices_[f[0]]).normalized();
      const Vec3 t1 = (vertices_[f[2]] - vertices_[f[0]]).normalized();
      const int row = 6 * nm + 2 * i;
      D.row(row).setZero();
      D.row(row + 1).setZero();
      for (std::size_t q = 0; q < tri.w.size(); q++)
      {
        std::array<double, 4> lambda{};
        for (int k = 0; k < 3; k++)
        {
          lambda[f[k]] = tri.lambda[q][k];
        }
        EvalSpanning(lambda, values, curls);
        D.row(row) += tri.w[q] * (t0.transpose() * values);
        D.row(row + 1) += tri.w[q] * (t1.transpose() * values);
      }
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
  if (!lu.isInvertible())
  {
    throw AssemblyError("singular element moment matrix on tet " + std::to_string(tet));
  }
  coeffs_ = lu.inverse();
}

Vec3 ElementBasis::Point(const std::array<double, 4> &lambda) const
{
  return lambda[0] * vertices_[0] + lambda[1] * vertices_[1] + lambda[2] * vertices_[2] +
         lambda[3] * vertices_[3];
}

void ElementBasis::EvalSpanning(const std::array<double, 4> &lambda, Eigen::Matrix3Xd &values,
                                Eigen::Matrix3Xd &curls) const
{
  const auto &set = SpanningSet(order_);
  values.resize(3, size_);
  curls.resize(3, size_);
  for (int m = 0; m < size_; m++)
  {
    Vec3 v = Vec3::Zero(), c = Vec3::Zero();
    for (const auto &term : set[m])
    {
      double p = term.c;
      Vec3 dp = Vec3::Zero();
      if (term.a >= 0 && term.b >= 0)
      {
        p *= lambda[term.a] * lambda[term.b];
        dp = term.c * (lambda[term.a] * grad_[term.b] + lambda[term.b] * grad_[term.a]);
      }
      else if (term.a >= 0)
      {
        p *= lambda[term.a];
        dp = term.c * grad_[term.a];
      }
      v += p * grad_[term.g];
      c += dp.cross(grad_[term.g]);
    }
    values.col(m) = v;
    curls.col(m) = c;
  }
}

void ElementBasis::Eval(const std::array<double, 4> &lambda, Eigen::Matrix3Xd &values,
                        Eigen::Matrix3Xd &curls) const
{
  Eigen::Matrix3Xd sv, sc;
  EvalSpanning(lambda, sv, sc);
  values.noalias() = sv * coeffs_;
  curls.noalias() = sc * coeffs_;
}

int AssemblyQuadratureOrder(const FESpace &space, const ProblemConfig &config)
{
  return config.quadrature_order >= 0 ? config.quadrature_order : 2 * space.Order() + 2;
}

SystemMatrices Assemble(const FESpace &space, const ProblemConfig &config)
{
  const Mesh &mesh = space.GetMesh();
  const int n = space.LocalSize();
  const auto rule = TetRuleForDegree(AssemblyQuadratureOrder(space, config));
  const bool mu_const = config.mu.IsConstant(), kappa_const = config.kappa.IsConstant();
  Eigen::Matrix3d mu_inv, kappa;
  if (mu_const)
  {
    const Eigen::Matrix3d mu = config.mu(Vec3::Zero());
    CheckSpd(mu, "mu");
    mu_inv = mu.inverse();
  }
  if (kappa_const)
  {
    kappa = config.kappa(Vec3::Zero());
    CheckSpd(kappa, "kappa");
  }

  std::vector<Eigen::Triplet<double>> tk, tm;
  tk.reserve(static_cast<std::size_t>(mesh.NumTets()) * n * n);
  tm.reserve(static_cast<std::size_t>(mesh.NumTets()) * n * n);
  Eigen::MatrixXd Kloc(n, n), Mloc(n, n);
  Eigen::Matrix3Xd values, curls;
  for (int t = 0; t < mesh.NumTets(); t++)
  {
    ElementBasis basis(space, t);
    Kloc.setZero();
    Mloc.setZero();
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      const Vec3 x = basis.Point(rule.lambda[q]);
      if (!mu_const)
      {
        const Eigen::Matrix3d mu = config.mu(x);
        CheckSpd(mu, "mu");
        mu_inv = mu.inverse();
      }
      if (!kappa_const)
      {
        kappa = config.kappa(x);
        CheckSpd(kappa, "kappa");
      }
      basis.Eval(rule.lambda[q], values, curls);
      const double w = rule.w[q] * basis.Volume();
      Kloc.noalias() += w * curls.transpose() * (mu_inv * curls);
      Mloc.noalias() += w * values.transpose() * (kappa * values);
    }
    const auto dofs = space.ElementDofs(t);
    for (int i = 0; i < n; i++)
    {
      for (int j = i; j < n; j++)
      {
        tk.emplace_back(dofs[i], dofs[j], Kloc(i, j));
        tm.emplace_back(dofs[i], dofs[j], Mloc(i, j));
        if (j != i)
        {
          tk.emplace_back(dofs[j], dofs[i], Kloc(i, j));
          tm.emplace_back(dofs[j], dofs[i], Mloc(i, j));
        }
      }
    }
  }
  SystemMatrices out;
  out.stiffness.resize(space.Size(), space.Size());
  out.mass.resize(space.Size(), space.Size());
  out.stiffness.setFromTriplets(tk.begin(), tk.end());
  out.mass.setFromTriplets(tm.begin(), tm.end());
  out.system = out.stiffness.cast<Complex>() + Complex(0.0, config.omega) * out.mass.cast<Complex>();
  out.system.makeCompressed();
  return out;
}

RealSparse AssembleMass(const FESpace &space, const TensorField &weight, int degree)
{
  const Mesh &mesh = space.GetMesh();
  const int n = space.LocalSize();
  const auto rule = TetRuleForDegree(degree >= 0 ? degree : 2 * space.Order() + 2);
  Eigen::Matrix3d w_const;
  if (weight.IsConstant())
  {
    w_const = weight(Vec3::Zero());
    CheckSpd(w_const, "mass weight");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.NumTets()) * n * n);
  Eigen::MatrixXd Mloc(n, n);
  Eigen::Matrix3Xd values, curls;
  for (int t = 0; t < mesh.NumTets(); t++)
  {
    ElementBasis basis(space, t);
    Mloc.setZero();
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      Eigen::Matrix3d w = w_const;
      if (!weight.IsConstant())
      {
        w = weight(basis.Point(rule.lambda[q]));
        CheckSpd(w, "mass weight");
      }
      basis.Eval(rule.lambda[q], values, curls);
      Mloc.noalias() += (rule.w[q] * basis.Volume()) * values.transpose() * (w * values);
    }
    const auto dofs = space.ElementDofs(t);
    for (int i = 0; i < n; i++)
    {
      for (int j = i; j < n; j++)
      {
        triplets.emplace_back(dofs[i], dofs[j], Mloc(i, j));
        if (j != i)
        {
          triplets.emplace_back(dofs[j], dofs[i], Mloc(i, j));
        }
      }
    }
  }
  RealSparse M(space.Size(), space.Size());
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

ComplexVector AssembleLoad(const FESpace &space, const VectorField &f, int degree)
{
  ComplexVector b = ComplexVector::Zero(space.Size());
  if (!f)
  {
    return b;
  }
  const Mesh &mesh = space.GetMesh();
  const auto rule = TetRuleForDegree(degree >= 0 ? degree : 2 * space.Order() + 4);
  Eigen::Matrix3Xd values, curls;
  for (int t = 0; t < mesh.NumTets(); t++)
  {
    ElementBasis basis(space, t);
    const auto dofs = space.ElementDofs(t);
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      basis.Eval(rule.lambda[q], values, curls);
      const CVec3 fx = f(basis.Point(rule.lambda[q]));
      const double w = rule.w[q] * basis.Volume();
      for (int i = 0; i < basis.Size(); i++)
      {
        b(dofs[i]) += w * Dot(fx, values.col(i));
      }
    }
  }
  return b;
}

ComplexVector Interpolate(const FESpace &space, const VectorField &v)
{
  const Mesh &mesh = space.GetMesh();
  ComplexVector u = ComplexVector::Zero(space.Size());
  const auto &line = InterpLineRule();
  for (int e = 0; e < mesh.NumEdges(); e++)
  {
    const auto &[a, b] = mesh.Edge(e);
    const Vec3 &xa = mesh.Vertex(a), &xb = mesh.Vertex(b);
    const Vec3 t = (xb - xa).normalized();
    for (std::size_t q = 0; q < line.s.size(); q++)
    {
      const double s = line.s[q];
      const Complex vt = Dot(v((1.0 - s) * xa + s * xb), t);
      for (int m = 0; m < space.EdgeMoments(); m++)
      {
        u(space.EdgeDof(e, m)) += line.w[q] * EdgeWeight(m, s) * vt;
      }
    }
  }
  if (space.FaceMoments() > 0)
  {
    const auto &tri = InterpTriangleRule();
    for (int f = 0; f < mesh.NumFaces(); f++)
    {
      auto ids = mesh.Face(f);
      std::sort(ids.begin(), ids.end());
      const Vec3 &xp = mesh.Vertex(ids[0]), &xq = mesh.Vertex(ids[1]), &xr = mesh.Vertex(ids[2]);
      const Vec3 t0 = (xq - xp).normalized(), t1 = (xr - xp).normalized();
      for (std::size_t q = 0; q < tri.w.size(); q++)
      {
        const auto &l = tri.lambda[q];
        const CVec3 vx = v(l[0] * xp + l[1] * xq + l[2] * xr);
        u(space.FaceDof(f, 0)) += tri.w[q] * Dot(vx, t0);
        u(space.FaceDof(f, 1)) += tri.w[q] * Dot(vx, t1);
      }
    }
  }
  return u;
}

std::pair<CVec3, CVec3> EvaluateField(const FESpace &space, const ComplexVector &u, int t,
                                      const std::array<double, 4> &lambda)
{
  ElementBasis basis(space, t);
  const auto dofs = space.ElementDofs(t);
  ComplexVector c(basis.Size());
  for (int i = 0; i < basis.Size(); i++)
  {
    c(i) = u(dofs[i]);
  }
  Eigen::Matrix3Xd values, curls;
  basis.Eval(lambda, values, curls);
  return {values.cast<Complex>() * c, curls.cast<Complex>() * c};
}

double HcurlError(const FESpace &space, const ComplexVector &u_h, const VectorField &exact,
                  const VectorField &exact_curl, int degree)
{
  const Mesh &mesh = space.GetMesh();
  const auto rule = TetRuleForDegree(degree >= 0 ? degree : 2 * space.Order() + 4);
  Eigen::Matrix3Xd values, curls;
  ComplexVector c(space.LocalSize());
  double sum = 0.0;
  for (int t = 0; t < mesh.NumTets(); t++)
  {
    ElementBasis basis(space, t);
    const auto dofs = space.ElementDofs(t);
    for (int i = 0; i < basis.Size(); i++)
    {
      c(i) = u_h(dofs[i]);
    }
    double local = 0.0;
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      basis.Eval(rule.lambda[q], values, curls);
      const Vec3 x = basis.Point(rule.lambda[q]);
      const CVec3 du = exact(x) - values.cast<Complex>() * c;
      const CVec3 dc = exact_curl(x) - curls.cast<Complex>() * c;
      local += rule.w[q] * (du.squaredNorm() + dc.squaredNorm());
    }
    sum += local * basis.Volume();
  }
  return std::sqrt(sum);
}

double L2NormSquared(const Mesh &mesh, const VectorField &f, int degree)
{
  if (!f)
  {
    return 0.0;
  }
  const auto rule = TetRuleForDegree(degree);
  double sum = 0.0;
  for (int t = 0; t < mesh.NumTets(); t++)
  {
    const auto &tet = mesh.Tet(t);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      Vec3 x = Vec3::Zero();
      for (int i = 0; i < 4; i++)
      {
        x += rule.lambda[q][i] * mesh.Vertex(tet[i]);
      }
      local += rule.w[q] * f(x).squaredNorm();
    }
    sum += local * mesh.SignedVolume(t);
  }
  return sum;
}

void WriteVtk(const FESpace &space, const ComplexVector &u, std::ostream &out)
{
  const Mesh &mesh = space.GetMesh();
  out << "# vtk DataFile Version 3.0\neddyctl field\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.NumVertices() << " double\n";
  for (const auto &x : mesh.Vertices())
  {
    out << x(0) << " " << x(1) << " " << x(2) << "\n";
  }
  out << "CELLS " << mesh.NumTets() << " " << 5 * mesh.NumTets() << "\n";
  for (const auto &tet : mesh.Tets())
  {
    out << "4 " << tet[0] << " " << tet[1] << " " << tet[2] << " " << tet[3] << "\n";
  }
  out << "CELL_TYPES " << mesh.NumTets() << "\n";
  for (int t = 0; t < mesh.NumTets(); t++)
  {
    out << "10\n";
  }
  std::vector<CVec3> val(mesh.NumTets()), curl(mesh.NumTets());
  for (int t = 0; t < mesh.NumTets(); t++)
  {
    std::tie(val[t], curl[t]) = EvaluateField(space, u, t, {0.25, 0.25, 0.25, 0.25});
  }
  out << "CELL_DATA " << mesh.NumTets() << "\n";
  auto write = [&](const char *name, const std::vector<CVec3> &data, bool imag)
  {
    out << "VECTORS " << name << " double\n";
    for (const auto &v : data)
    {
      const Vec3 r = imag ? Vec3(v.imag()) : Vec3(v.real());
      out << r(0) << " " << r(1) << " " << r(2) << "\n";
    }
  };
  write("u_real", val, false);
  write("u_imag", val, true);
  write("curl_u_real", curl, false);
  write("curl_u_imag", curl, true);
}

} // namespace eddy
