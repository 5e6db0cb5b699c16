// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDDY_SOLVER_HPP
#define EDDY_SOLVER_HPP

#include <atomic>
#include <memory>
#include <stdexcept>
#include "eddy/nedelec.hpp"
#include "eddy/trace.hpp"

namespace eddy
{

class SolverError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Adjoint solution w (zero on boundary dofs) and the residual moments it was built from.
struct AdjointState
{
  ComplexVector w;
  ComplexVector residual; // (r, phi_i)
};

struct SolveCounters
{
  long factorizations = 0;
  long forward_solves = 0;
  long adjoint_solves = 0;
};

//
// Discrete solution operator. The system is split into interior (I) and boundary (B)
// dofs; A_II is factorized once and reused by all state and adjoint solves.
//
class StateOperator
{
public:
  StateOperator(const FESpace &space, const ControlSpace &control, const ProblemConfig &config);

  const FESpace &Space() const { return *space_; }
  const ControlSpace &Control() const { return *control_; }
  const Lifting &GetLifting() const { return lifting_; }
  const SystemMatrices &Matrices() const { return matrices_; }
  const ComplexVector &Load() const { return load_; }
  const ComplexSparse &InteriorBlock() const { return A_II_; }
  const ComplexSparse &CouplingBlock() const { return A_IB_; }

  // u = L z + u_0 with A_II u_0 = f_I - A_IB (L z)_B, f the assembled load.
  ComplexVector Solve(const ComplexVector &z) const;
  // Same with zero source: the linear part z -> S z.
  ComplexVector SolveHomogeneous(const ComplexVector &z) const;
  // Dirichlet data g on the boundary dofs (length |B|) and load f (length N).
  ComplexVector SolveBoundaryValues(const ComplexVector &g_boundary, const ComplexVector &f) const;

  // A_II^H w_I = r_I, w_B = 0. A is complex symmetric, so A_II^H = conj(A_II) and the
  // forward factors serve: w_I = conj(A_II^{-1} conj(r_I)).
  AdjointState SolveAdjoint(const ComplexVector &residual) const;

  // <S*(r), xi> = -conj(a(L xi, w)) + (r, L xi), using only boundary-coupled rows.
  Complex AdjointAction(const AdjointState &adjoint, const ComplexVector &xi) const;
  // Vector h with AdjointAction(adjoint, xi) = xi^H h for all xi.
  ComplexVector AdjointActionVector(const AdjointState &adjoint) const;

  SolveCounters Counters() const;

  ~StateOperator();
  StateOperator(const StateOperator &) = delete;
  StateOperator &operator=(const StateOperator &) = delete;

  // Name of the sparse direct solver in use.
  static const char *Backend();

private:
  struct Factorization;

  // A_II x = rhs with iterative refinement up to the residual tolerance.
  ComplexVector SolveInterior(const ComplexVector &rhs, const char *what) const;

  const FESpace *space_;
  const ControlSpace *control_;
  Lifting lifting_;
  SystemMatrices matrices_;
  ComplexVector load_;
  ComplexSparse A_II_, A_IB_;
  std::unique_ptr<Factorization> lu_;
  double tolerance_;
  mutable std::atomic<long> forward_solves_{0}, adjoint_solves_{0};
  long factorizations_ = 0;
};

// Scatter/gather between full vectors and the I/B blocks.
ComplexVector Restrict(const ComplexVector &u, const std::vector<int> &dofs);
void Scatter(const ComplexVector &part, const std::vector<int> &dofs, ComplexVector &u);

} // namespace eddy

#endif // EDDY_SOLVER_HPP
