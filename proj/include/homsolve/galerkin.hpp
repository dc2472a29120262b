#pragma once

#include "homsolve/basis.hpp"
#include "homsolve/problem.hpp"
#include "homsolve/strauss.hpp"

#include <optional>
#include <vector>

namespace homsolve {

/// Assembly knobs. `forcing_scale` multiplies the constant source psi == 1
/// (the regularizing 1/k term); `extra_source` is an optional additional
/// source used by manufactured-solution tests.
struct AssemblyOptions {
  double forcing_scale = 0.0;
  ScalarFn extra_source;  // empty = none
};

/// Components F_j(xi) of the projected system: for u = sum xi_l e_l,
///   F_j = int A(u) u' e_j' + int u e_j - int lambda a1 |u|^{q-1} e_j
///         - int |u|^{p-1} e_j - int f_k(|u'|) e_j - int forcing e_j.
Vector assemble_F(const ProblemInstance& inst, const EvenBasis& basis,
                  const StraussApproximant& fk, const Vector& xi,
                  const AssemblyOptions& opts = {});

struct GalerkinSolution {
  GalerkinCoeffs coeffs;
  double n = 0.0;
  int M = 0;
  long long k = 0;
  double lambda = 0.0;
  double forcing_scale = 0.0;
  ArrayX t, u, du;          // samples on the output grid
  double residual_sup = 0.0;  // max-norm of F at the accepted root
  bool certificate = false;   // sphere sign certificate verified upstream
  double certificate_min = 0.0;
};

struct SolveOptions {
  double residual_tol = 1e-10;
  int max_iterations = 100;
  Eigen::Index output_points = 1001;
  std::optional<Vector> warm_start;
  AssemblyOptions assembly;
};

struct SolveDiagnostics {
  std::vector<Vector> roots;  // all distinct converged roots inside the ball
  int newton_runs = 0;
};

/// Damped Newton (forward-difference Jacobian, Armijo backtracking on |F|^2,
/// steps projected into the ball of radius r) from the origin plus eight
/// deterministic directions at radius r/4. Among converged in-ball roots the
/// one of largest norm is returned. Throws SolverStall("solver exhausted")
/// when no start converges.
GalerkinSolution solve_in_ball(const ProblemInstance& inst, const EvenBasis& basis,
                               const StraussApproximant& fk, double r,
                               const SolveOptions& opts = {},
                               SolveDiagnostics* diag = nullptr);

/// Max weak-form defect over the first `probe_count` basis functions plus ten
/// seeded random even syntheses from the basis span.
double weak_residual(const ProblemInstance& inst, const EvenBasis& basis,
                     const StraussApproximant& fk, const GalerkinSolution& sol,
                     int probe_count, unsigned long long seed = 2024);

/// Sup over an interior grid of |u''(synthesis) - u''(strong form)|, where the
/// strong form solves the equation for u'' pointwise. Throws
/// NumericsError("hypothesis breach") if A(u) < gamma/2 anywhere.
double strong_residual(const ProblemInstance& inst, const EvenBasis& basis,
                       const StraussApproximant& fk, const GalerkinSolution& sol,
                       double margin = 0.0, Eigen::Index grid_points = 2001);

/// u'' recovered from the strong-form relation at sampled (t, u, u') values.
ArrayX second_derivative_from_equation(const ProblemInstance& inst,
                                       const StraussApproximant& fk,
                                       const ArrayX& t, const ArrayX& u,
                                       const ArrayX& du, double forcing_scale);

/// Pointwise check |B(t,z,p)| <= L (1+|p|)^2 of the zeroth-order part on the
/// solution graph; returns the worst slack (negative on violation).
double lieberman_envelope_margin(const ProblemInstance& inst,
                                 const StraussApproximant& fk,
                                 const GalerkinSolution& sol, double L);

}  // namespace homsolve
