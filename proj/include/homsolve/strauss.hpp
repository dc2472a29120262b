#pragma once

#include "homsolve/common.hpp"

namespace homsolve {

/// G(s) = \int_0^s g, by adaptive quadrature to absolute tolerance abs_tol.
/// Throws NumericsError("antiderivative failure") on non-convergence.
double antiderivative(const ScalarFn& g, double s, double abs_tol = 1e-12);

/// Lipschitz regularization of a continuous g built from difference quotients
/// of its antiderivative. Branch values that do not depend on the evaluation
/// point are precomputed; evaluation is pure and thread-safe.
class StraussApproximant {
 public:
  StraussApproximant(ScalarFn g, long long k, double theta = 3.0,
                     double quad_tol = 1e-12);

  long long k() const { return k_; }
  const ScalarFn& g() const { return g_; }

  /// f_k(s); exact piecewise evaluation, ties at branch ends resolved to the
  /// branch listed first (s <= -k, [-k,-1/k), [-1/k,0), [0,1/k], (1/k,k], s > k).
  double eval(double s) const;

  double lipschitz_cached() const { return lipschitz_cached_; }
  double growth_constant() const { return growth_constant_; }

 private:
  ScalarFn g_;
  long long k_;
  double kd_;
  double quad_tol_;
  double clamp_pos_;   // k [G(k+1/k) - G(k)]
  double clamp_neg_;   // -k [G(-k-1/k) - G(-k)]
  double slope_pos_;   // k^2 [G(2/k) - G(1/k)]
  double slope_neg_;   // k^2 [G(-2/k) - G(-1/k)]
  double lipschitz_cached_ = 0.0;
  double growth_constant_ = 1.0;

  double g_integral(double a, double b) const;
};

/// max |f_k(s) - g(s)| over `samples` uniformly spaced points of [-m, m]
/// (endpoints included).
double uniform_error(const StraussApproximant& fk, const ScalarFn& g, double m,
                     Eigen::Index samples);

/// Max difference quotient |f_k(s_{i+1}) - f_k(s_i)| / h over a uniform grid
/// of [-radius, radius].
double lipschitz_estimate(const StraussApproximant& fk, double radius,
                          Eigen::Index samples);

/// Sampled envelope constant: max(1, sup s f_k(s)/|s|^theta over |s| >= 1/k,
/// sup s f_k(s)/s^2 over |s| <= 1/k). Samples are log-spaced and include the
/// branch points +-1/k, +-k.
double growth_constant(const StraussApproximant& fk, double theta, double radius,
                       Eigen::Index samples);

}  // namespace homsolve
