#pragma once

#include "homsolve/basis.hpp"
#include "homsolve/galerkin.hpp"
#include "homsolve/problem.hpp"
#include "homsolve/strauss.hpp"

namespace homsolve {

/// Constant of the embedding of the Sobolev space on the line into L^inf for
/// the Hilbert norm: ||u||_inf^2 <= ||u|| ||u'|| <= ||u||_{W^{1,2}}^2 / 2.
inline double embedding_constant() { return 1.0 / std::sqrt(2.0); }

/// delta1 = min{ (gamma/(4 C^{p-2}))^{1/(p-2)},
///               (gamma/(4 C1 max{C^{theta-2}, C}))^{1/(theta-2)} }.
double delta1(double gamma, double C, double C1, double p, double theta);

/// Lambda* = r^2 gamma / (2 C2 delta1^q).
double lambda_star(double r, double gamma, double C2, double d1, double q);

/// rho1 = gamma r^2 / 2 - lambda C2 delta1^q.
double rho1(double r, double gamma, double lambda, double C2, double d1, double q);

/// Smallest integer k with rho1 > (C1 sqrt(2n) + psi_norm) delta1 / k, verified
/// directly at k and k-1. Throws NumericsError("lambda too large for
/// certificate") when rho1 <= 0 or the threshold is astronomically large.
long long k_star(double rho1_value, double C1, double n, double d1, double psi_norm);

/// First Dirichlet eigenpair on (-n, n): lambda1 = pi^2/(2n)^2 and
/// phi1(t) = cos(pi t / (2n)), positive, even, vanishing at the endpoints.
struct EigenPair {
  double n = 0.0;
  double lambda1 = 0.0;
  double phi1(double t) const { return std::cos(M_PI * t / (2.0 * n)); }
  double phi1_second(double t) const { return -lambda1 * phi1(t); }
};
EigenPair eigen_pair(double n);

/// Minimum of a1 over [-n, n], sampled on a symmetric grid.
double weight_min(const ProblemInstance& inst, double n, Eigen::Index samples = 4097);

/// tau = (lambda a_min / (1 + gamma lambda1))^{1/(2-q)}, the scale that makes
/// tau phi1 a barrier from below. Throws on a_min <= 0.
double tau_subsolution_scale(const ProblemInstance& inst, double n,
                             Eigen::Index samples = 4097);

/// r_tilde = min{ r, sqrt(lambda) sqrt(2 C2 r^q / gamma) }.
double r_tilde(double lambda, double r, double C2, double gamma, double q);

struct QMin {
  double m = 0.0;
  double C_Lambda = 0.0;
};
/// Minimizer m = (Lambda (2-q)/(p-2))^{1/(p-q)} of
/// Q(s) = (Lambda s^{q-1} + s^{p-1})/s and its minimum value C_Lambda.
QMin q_min_and_threshold(double Lambda, double q, double p);

/// Smallest lambda0 (by bisection, relative tolerance 1e-12) such that
/// C_Lambda with Lambda = lambda0 * min_{(-R,R)} a1 reaches
/// A(C r_tilde) sigma1 + A(C r_tilde) delta + 1 with delta = 1/2 and sigma1
/// the first Dirichlet eigenvalue on (-R, R).
double nonexistence_threshold(const ProblemInstance& inst, double R,
                              double r_tilde_value, Eigen::Index samples = 4097);

/// Sampled Lipschitz constant of A by difference quotients (an underestimate).
double lipschitz_of_A(const ProblemInstance& inst, double radius = 20.0,
                      Eigen::Index samples = 4096);

/// L of the gradient-envelope conditions: 2 max{ C r + lambda
/// max(|a1(-n)|,|a1(n)|) (C r)^{q-1} + (C r)^{p-1} + 1, 2 C1, A(C r), A_lip }.
double lieberman_L(const ProblemInstance& inst, double C, double r, double n,
                   double C1, double A_lip);

struct CertificateReport {
  double min_value = 0.0;
  bool pass = false;
  Vector worst_direction;
  int samples = 0;
};

/// Evaluates <F(xi), xi> at `samples` seeded random directions scaled to
/// radius r; passes when the minimum is strictly positive.
CertificateReport sphere_sign_certificate(const ProblemInstance& inst,
                                          const EvenBasis& basis,
                                          const StraussApproximant& fk, double r,
                                          int samples, double forcing_scale,
                                          unsigned long long seed = 12345);

/// Every explicit constant of the construction for a given instance and
/// interval half-width, in one bundle.
struct ConstantsReport {
  double C = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double delta1 = 0.0;
  double r = 0.0;
  double rho1 = 0.0;
  double Lambda_star = 0.0;
  long long k_star = 0;
  double lambda1 = 0.0;
  double tau = 0.0;
  double r_tilde = 0.0;
  double a_tilde = 0.0;     // min of a1 on [-n, n]
  double a_tilde_R = 0.0;   // min of a1 on [-R, R]
  double sigma1 = 0.0;      // first Dirichlet eigenvalue on (-R, R)
  double Lambda = 0.0;      // lambda * a_tilde_R
  double m = 0.0;
  double C_Lambda = 0.0;
  double delta = 0.5;       // fixed choice in the nonexistence threshold
  double lambda0 = 0.0;     // nonexistence threshold
  bool nonexistence_threshold_ok = false;  // lambda < lambda0
  double A_tilde = 0.0;     // sampled Lipschitz constant of A
  double L = 0.0;
  double psi_norm = 0.0;    // sqrt(2n), since psi == 1
  double n = 0.0;
  double R = 0.0;
  long long strauss_k_ref = 0;
};

/// Computes the full report. k_star/rho1 require lambda < Lambda_star; when
/// they are not available (lambda at or above the threshold) k_star is 0 and
/// rho1 <= 0 is reported as computed.
ConstantsReport compute_constants(const ProblemInstance& inst, double n, double R = 1.0,
                                  double lstar_radius = 12.0, long long k_ref = 10);

}  // namespace homsolve
