// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_NEDELEC_HPP
#define EDDY_NEDELEC_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>
#include <Eigen/Dense>
#include <Eigen/Sparse>
#include "eddy/mesh.hpp"
#include "eddy/quadrature.hpp"

namespace eddy
{

using Complex = std::complex<double>;
using CVec3 = Eigen::Vector3cd;
using ComplexVector = Eigen::VectorXcd;
using RealSparse = Eigen::SparseMatrix<double>;
using ComplexSparse = Eigen::SparseMatrix<Complex>;

// Complex vector field on R^3 (sources, desired states, exact solutions).
using VectorField = std::function<CVec3(const Vec3 &)>;

class AssemblyError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Symmetric positive definite 3x3 coefficient, constant or sampled pointwise.
class TensorField
{
public:
  static TensorField Scalar(double value);
  static TensorField Constant(const Eigen::Matrix3d &value);
  static TensorField Function(std::function<Eigen::Matrix3d(const Vec3 &)> f);

  Eigen::Matrix3d operator()(const Vec3 &x) const { return f_ ? f_(x) : value_; }
  bool IsConstant() const { return !f_; }

private:
  Eigen::Matrix3d value_ = Eigen::Matrix3d::Identity();
  std::function<Eigen::Matrix3d(const Vec3 &)> f_;
};

// Throws AssemblyError unless m is symmetric positive definite.
void CheckSpd(const Eigen::Matrix3d &m, const char *name);

// Data of the state equation curl(mu^-1 curl u) + i omega kappa u = j_c and the cost
// 1/2 |u - u_d|^2 + alpha/2 |curl_G z|^2 + beta/2 |z|^2.
struct ProblemConfig
{
  TensorField mu = TensorField::Scalar(1.0);
  TensorField kappa = TensorField::Scalar(1.0);
  double omega = 1.0;
  VectorField current; // j_c; empty means zero.
  VectorField desired; // u_d; empty means zero.
  double alpha = 1e-3;
  double beta = 0.0;
  double solver_tolerance = 1e-10;
  int quadrature_order = -1; // Negative selects 2k + 2.

  void Validate() const;
};

enum class EntityKind
{
  Edge,
  Face,
  Interior
};

struct DofEntity
{
  EntityKind kind;
  int entity;
  int moment;
};

//
// First-kind Nedelec space of order k in {0, 1} on a tetrahedral mesh. Degrees of freedom
// are tangential moments tied to the global edge/face orientation:
//   edge e = (a, b), a < b:  int_0^1 v(x(s)) . t_e q_m(s) ds, q_0 = 1, q_1 = 2s - 1,
//   face f = (p, q, r) sorted: mean over f of v . t_pq and v . t_pr,
// with unit tangents t. For k = 0 the dof is the mean tangential component along the edge.
//
class FESpace
{
public:
  FESpace(const Mesh &mesh, int order);

  const Mesh &GetMesh() const { return *mesh_; }
  int Order() const { return order_; }
  int Size() const { return static_cast<int>(dofs_.size()); }
  int LocalSize() const { return order_ == 0 ? 6 : 20; }
  int EdgeMoments() const { return order_ + 1; }
  int FaceMoments() const { return order_ == 0 ? 0 : 2; }

  const DofEntity &Dof(int d) const { return dofs_[d]; }
  int EdgeDof(int e, int m) const { return e * EdgeMoments() + m; }
  int FaceDof(int f, int m) const
  {
    return mesh_->NumEdges() * EdgeMoments() + f * FaceMoments() + m;
  }

  bool IsBoundaryDof(int d) const { return boundary_pos_[d] >= 0; }
  const std::vector<int> &BoundaryDofs() const { return boundary_dofs_; }
  const std::vector<int> &InteriorDofs() const { return interior_dofs_; }
  // Position of dof d within BoundaryDofs()/InteriorDofs(), or -1.
  int BoundaryPosition(int d) const { return boundary_pos_[d]; }
  int InteriorPosition(int d) const { return interior_pos_[d]; }

  // Global dofs of tet t in local order: edge l moment m at l (k+1) + m, then face i
  // moment m at 6 (k+1) + 2 i + m.
  std::vector<int> ElementDofs(int t) const;

private:
  const Mesh *mesh_;
  int order_;
  std::vector<DofEntity> dofs_;
  std::vector<int> boundary_dofs_, interior_dofs_;
  std::vector<int> boundary_pos_, interior_pos_;
};

//
// Nodal (moment-dual) basis of one tetrahedron, expressed through a fixed spanning set
// of barycentric polynomial fields.
//
class ElementBasis
{
public:
  ElementBasis(const FESpace &space, int tet);

  int Size() const { return size_; }
  double Volume() const { return volume_; }
  Vec3 Point(const std::array<double, 4> &lambda) const;
  const std::array<Vec3, 4> &BarycentricGradients() const { return grad_; }

  // Columns are basis values / curls at the barycentric point.
  void Eval(const std::array<double, 4> &lambda, Eigen::Matrix3Xd &values,
            Eigen::Matrix3Xd &curls) const;

private:
  void EvalSpanning(const std::array<double, 4> &lambda, Eigen::Matrix3Xd &values,
                    Eigen::Matrix3Xd &curls) const;

  int order_;
  int size_;
  double volume_;
  std::array<Vec3, 4> vertices_;
  std::array<Vec3, 4> grad_;
  Eigen::MatrixXd coeffs_; // phi_d = sum_m coeffs_(m, d) s_m.
};

// Real matrices of the discrete sesquilinear form and A = K + i omega M.
struct SystemMatrices
{
  RealSparse stiffness; // (mu^-1 curl phi_j, curl phi_i)
  RealSparse mass;      // (kappa phi_j, phi_i)
  ComplexSparse system; // stiffness + i omega mass
};

int AssemblyQuadratureOrder(const FESpace &space, const ProblemConfig &config);

// (w phi_j, phi_i) for an SPD weight; the plain L2 Gram matrix by default.
RealSparse AssembleMass(const FESpace &space, const TensorField &weight = TensorField::Scalar(1.0),
                        int degree = -1);

SystemMatrices Assemble(const FESpace &space, const ProblemConfig &config);

// Entries int f . conj(phi_i) = int f . phi_i (the basis is real). Zero for empty f.
ComplexVector AssembleLoad(const FESpace &space, const VectorField &f, int degree = -1);

// Moment interpolant of a smooth field.
ComplexVector Interpolate(const FESpace &space, const VectorField &v);

// Value and curl of the discrete field u at a barycentric point of tet t.
std::pair<CVec3, CVec3> EvaluateField(const FESpace &space, const ComplexVector &u, int t,
                                      const std::array<double, 4> &lambda);

// (|u - u_h|_0^2 + |curl u - curl u_h|_0^2)^(1/2) with a degree 2k + 4 rule.
double HcurlError(const FESpace &space, const ComplexVector &u_h, const VectorField &exact,
                  const VectorField &exact_curl, int degree = -1);

// int_Omega |f|^2.
double L2NormSquared(const Mesh &mesh, const VectorField &f, int degree);

// Legacy VTK with per-cell real/imaginary parts of u_h and curl u_h at centroids.
void WriteVtk(const FESpace &space, const ComplexVector &u, std::ostream &out);

} // namespace eddy

#endif // EDDY_NEDELEC_HPP
