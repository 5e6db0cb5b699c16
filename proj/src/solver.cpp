// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "eddy/solver.hpp"

#include <string>

#ifdef EDDY_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

namespace eddy
{

ComplexVector Restrict(const ComplexVector &u, const std::vector<int> &dofs)
{
  ComplexVector part(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); i++)
  {
    part(i) = u(dofs[i]);
  }
  return part;
}

void Scatter(const ComplexVector &part, const std::vector<int> &dofs, ComplexVector &u)
{
  for (std::size_t i = 0; i < dofs.size(); i++)
  {
    u(dofs[i]) = part(i);
  }
}

#ifdef EDDY_HAVE_UMFPACK
// 64-bit indices select the umfpack_zl interface, which does not overflow on large meshes.
struct StateOperator::Factorization
{
  using Matrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, long>;
  Matrix A; // UmfPackLU keeps a reference to its input for the solve phase.
  Eigen::UmfPackLU<Matrix> lu;
  void Compute(const ComplexSparse &matrix)
  {
    A = matrix;
    A.makeCompressed();
    lu.compute(A);
  }
  bool Ok() const { return lu.info() == Eigen::Success; }
  std::string Message() const { return "UMFPACK reported a singular or failed factorization"; }
  ComplexVector Solve(const ComplexVector &b) const { return lu.solve(b); }
};

const char *StateOperator::Backend()
{
  return "umfpack";
}
#else
struct StateOperator::Factorization
{
  Eigen::SparseLU<ComplexSparse, Eigen::COLAMDOrdering<int>> lu;
  void Compute(const ComplexSparse &A) { lu.compute(A); }
  bool Ok() const { return lu.info() == Eigen::Success; }
  std::string Message() const { return lu.lastErrorMessage(); }
  ComplexVector Solve(const ComplexVector &b) const { return lu.solve(b); }
};

const char *StateOperator::Backend()
{
  return "eigen-sparselu";
}
#endif

StateOperator::~StateOperator() = default;

StateOperator::StateOperator(const FESpace &space, const ControlSpace &control,
                             const ProblemConfig &config)
  : space_(&space), control_(&control), lifting_(space, control),
    tolerance_(config.solver_tolerance)
{
  matrices_ = Assemble(space, config);
  load_ = AssembleLoad(space, config.current);

  const int ni = static_cast<int>(space.InteriorDofs().size());
  const int nb = static_cast<int>(space.BoundaryDofs().size());
  std::vector<Eigen::Triplet<Complex>> tii, tib;
  const auto &A = matrices_.system;
  for (int col = 0; col < A.outerSize(); col++)
  {
    const int jb = space.BoundaryPosition(col), ji = space.InteriorPosition(col);
    for (ComplexSparse::InnerIterator it(A, col); it; ++it)
    {
      const int ii = space.InteriorPosition(static_cast<int>(it.row()));
      if (ii < 0)
      {
        continue;
      }
      if (ji >= 0)
      {
        tii.emplace_back(ii, ji, it.value());
      }
      else
      {
        tib.emplace_back(ii, jb, it.value());
      }
    }
  }
  A_II_.resize(ni, ni);
  A_II_.setFromTriplets(tii.begin(), tii.end());
  A_II_.makeCompressed();
  A_IB_.resize(ni, nb);
  A_IB_.setFromTriplets(tib.begin(), tib.end());
  A_IB_.makeCompressed();

  // The adjoint solve relies on A_II = A_II^T, which the mirrored assembly gives exactly.
  if (ni > 0 && (A_II_ - ComplexSparse(A_II_.transpose())).norm() != 0.0)
  {
    throw SolverError("interior block is not complex symmetric");
  }

  lu_ = std::make_unique<Factorization>();
  if (ni > 0)
  {
    lu_->Compute(A_II_);
    if (!lu_->Ok())
    {
      throw SolverError("LU factorization of the " + std::to_string(ni) +
                        " x " + std::to_string(ni) + " interior block failed: " + lu_->Message());
    }
    factorizations_++;
  }
}

ComplexVector StateOperator::SolveInterior(const ComplexVector &rhs, const char *what) const
{
  const double scale = rhs.norm();
  if (rhs.size() == 0 || scale == 0.0)
  {
    return ComplexVector::Zero(rhs.size());
  }
  ComplexVector x = lu_->Solve(rhs);
  ComplexVector r = rhs - A_II_ * x;
  double residual = r.norm() / scale;
  for (int step = 0; step < 3 && !(residual <= tolerance_); step++)
  {
    x += lu_->Solve(r);
    r = rhs - A_II_ * x;
    residual = r.norm() / scale;
  }
  if (!(residual <= tolerance_))
  {
    throw SolverError(std::string(what) + " residual " + std::to_string(residual) +
                      " exceeds tolerance " + std::to_string(tolerance_));
  }
  return x;
}

ComplexVector StateOperator::SolveBoundaryValues(const ComplexVector &g_boundary,
                                                 const ComplexVector &f) const
{
  const auto &I = space_->InteriorDofs();
  const auto &B = space_->BoundaryDofs();
  if (g_boundary.size() != static_cast<Eigen::Index>(B.size()) || f.size() != space_->Size())
  {
    throw std::invalid_argument("boundary solve: size mismatch");
  }
  ComplexVector u = ComplexVector::Zero(space_->Size());
  Scatter(g_boundary, B, u);
  const ComplexVector rhs = Restrict(f, I) - A_IB_ * g_boundary;
  if (rhs.size() > 0)
  {
    forward_solves_++;
  }
  Scatter(SolveInterior(rhs, "state solve"), I, u);
  return u;
}

ComplexVector StateOperator::Solve(const ComplexVector &z) const
{
  return SolveBoundaryValues(lifting_.BoundaryMatrix() * z, load_);
}

ComplexVector StateOperator::SolveHomogeneous(const ComplexVector &z) const
{
  return SolveBoundaryValues(lifting_.BoundaryMatrix() * z,
                             ComplexVector::Zero(space_->Size()));
}

AdjointState StateOperator::SolveAdjoint(const ComplexVector &residual) const
{
  if (residual.size() != space_->Size())
  {
    throw std::invalid_argument("adjoint solve: residual has wrong size");
  }
  const auto &I = space_->InteriorDofs();
  AdjointState state;
  state.residual = residual;
  state.w = ComplexVector::Zero(space_->Size());
  const ComplexVector rhs = Restrict(residual, I);
  if (rhs.size() == 0)
  {
    return state;
  }
  adjoint_solves_++;
  const ComplexVector w = SolveInterior(rhs.conjugate(), "adjoint solve").conjugate();
  Scatter(w, I, state.w);
  return state;
}

ComplexVector StateOperator::AdjointActionVector(const AdjointState &adjoint) const
{
  // -conj(w_I^H A_IB P_B xi) + (P xi)^H r = xi^H (P^T r - P_B^T A_IB^H w_I).
  const ComplexVector wI = Restrict(adjoint.w, space_->InteriorDofs());
  const ComplexVector coupling = A_IB_.adjoint() * wI;
  const ComplexVector h = lifting_.Matrix().transpose() * adjoint.residual -
                          lifting_.BoundaryMatrix().transpose() * coupling;
  return h;
}

Complex StateOperator::AdjointAction(const AdjointState &adjoint, const ComplexVector &xi) const
{
  const ComplexVector g = lifting_.BoundaryMatrix() * xi;
  const ComplexVector wI = Restrict(adjoint.w, space_->InteriorDofs());
  const Complex a = wI.dot(A_IB_ * g);
  const Complex pairing = lifting_.Lift(xi).dot(adjoint.residual);
  return -std::conj(a) + pairing;
}

SolveCounters StateOperator::Counters() const
{
  SolveCounters c;
  c.factorizations = factorizations_;
  c.forward_solves = forward_solves_.load();
  c.adjoint_solves = adjoint_solves_.load();
  return c;
}

} // namespace eddy
