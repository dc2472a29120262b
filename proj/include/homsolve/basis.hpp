#pragma once

#include "homsolve/common.hpp"
#include "homsolve/quadrature.hpp"

namespace homsolve {

/// Coefficient vector of an even Galerkin expansion. By orthonormality the
/// Sobolev norm of the synthesized function equals the Euclidean norm of xi.
struct GalerkinCoeffs {
  Vector xi;
  double norm_W12() const { return xi.norm(); }
};

/// Truncate or zero-pad a coefficient vector to length M.
GalerkinCoeffs project_coeffs(const GalerkinCoeffs& c, Eigen::Index M);

/// Orthonormal even cosine basis of the Sobolev space on (-n, n) with zero
/// boundary values: e_l(t) = nu_l cos(omega_l t), omega_l = (2l-1) pi / (2n),
/// nu_l = 1/sqrt(n (1 + omega_l^2)). The basis is simultaneously L2- and
/// H1-orthogonal, so the Gram matrix in the H1 inner product is the identity.
class EvenBasis {
 public:
  EvenBasis(double n, int M, QuadratureRule quad);

  double n() const { return n_; }
  int M() const { return M_; }
  const ArrayX& omega() const { return omega_; }
  const ArrayX& nu() const { return nu_; }
  const QuadratureRule& quad() const { return quad_; }

  // basis values and derivatives at the quadrature nodes (Q x M)
  const Matrix& values() const { return E_; }
  const Matrix& derivatives() const { return D_; }

  double eval(int l, double t) const;         // e_l(t), l is 1-based
  double eval_deriv(int l, double t) const;   // e_l'(t)
  double eval_second(int l, double t) const;  // e_l''(t)

  /// u(t) = sum xi_l e_l(t) for a grid of points; also u' and optionally u''.
  void synthesize(const Vector& xi, const ArrayX& t, ArrayX& u, ArrayX& du) const;
  void synthesize(const Vector& xi, const ArrayX& t, ArrayX& u, ArrayX& du,
                  ArrayX& ddu) const;

  /// u and u' at the quadrature nodes via the cached matrices.
  void synthesize_at_nodes(const Vector& xi, ArrayX& u, ArrayX& du) const;

  /// Max deviation of the H1 Gram matrix from the identity under this rule.
  double gram_deviation() const;

 private:
  double n_;
  int M_;
  ArrayX omega_, nu_;
  QuadratureRule quad_;
  Matrix E_, D_;
};

/// Builds the basis, doubling the quadrature size until the Gram identity
/// holds to 1e-10 (throws NumericsError("quadrature order insufficient") if
/// even 1e-8 cannot be met). Q <= 0 selects the default max(2M+8, 64).
EvenBasis build_basis(double n, int M, int Q = 0);

}  // namespace homsolve
