#pragma once

#include "homsolve/common.hpp"

#include <vector>

namespace homsolve {

/// Even weight in front of the sublinear term, with a certified bound on the
/// L^s tail integral outside [-R, R].
struct Weight {
  std::string name;
  ScalarFn value;
  // bound on \int_{|t|>R} |a1(t)|^s dt
  std::function<double(double R, double s)> tail_bound;
};

/// Data of one problem instance: exponents, the parameter lambda, and the
/// coefficient functions A (with derivative), a1 and g.
struct ProblemInstance {
  std::string name;
  double q = 1.5;
  double p = 3.0;
  double theta = 3.0;
  double lambda = 0.01;
  double gamma = 0.5;
  ScalarFn A;
  ScalarFn dA;
  Weight a1;
  ScalarFn g;

  /// Conjugate exponent s = 2/(2-q) of the weight space.
  double lstar_exponent() const { return 2.0 / (2.0 - q); }
};

// ---- built-in catalog -----------------------------------------------------

/// A(t) = gamma + (1-gamma) (1/2 + atan(t)/pi): smooth, nondecreasing, inf gamma.
ScalarFn catalog_A_arctan(double gamma);
ScalarFn catalog_dA_arctan(double gamma);
/// Constant diffusion A == gamma.
ScalarFn catalog_A_constant(double gamma);

Weight catalog_weight_gaussian();  // e^{-t^2}
Weight catalog_weight_laplace();   // e^{-|t|}
Weight catalog_weight_zero();

/// g(s) = sign(s) |s|^{theta-1}, so s g(s) = |s|^theta exactly.
ScalarFn catalog_g_signed_power(double theta);
ScalarFn catalog_g_zero();

/// Default instance: arctan A, gaussian weight, g(s) = s|s|,
/// q = 1.5, p = 3, theta = 3, gamma = 0.5, lambda = 0.01.
ProblemInstance default_instance();

/// Instance assembled from catalog component names; throws ConfigError for
/// unknown names.
ProblemInstance make_instance(const std::string& A_kind, const std::string& a1_kind,
                              const std::string& g_kind, double q, double p,
                              double theta, double lambda, double gamma);

/// Every instance shipped in the catalog (used by property tests).
std::vector<ProblemInstance> catalog_instances();

// ---- hypothesis validation ------------------------------------------------

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  double worst_value = 0.0;  // margin of the binding inequality, < 0 on failure
  double worst_point = 0.0;
  long ties = 0;             // samples where the inequality holds with equality
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool all_pass = true;
};

/// Samples all structural hypotheses on a symmetric grid of `grid_points`
/// points over [-grid_radius, grid_radius]. Throws NumericsError("instance
/// evaluation error ...") when a data function returns a non-finite value.
HypothesisReport validate_hypotheses(const ProblemInstance& inst,
                                     double grid_radius, Eigen::Index grid_points);

/// ||a1||_{L^s(R)} with s = 2/(2-q), by adaptive quadrature on
/// [-truncation_radius, truncation_radius]. The declared tail bound of the
/// weight must not exceed `tail_tol`, else NumericsError("truncation
/// insufficient").
double lstar_norm_a1(const ProblemInstance& inst, double truncation_radius,
                     double tail_tol = 1e-12, double quad_tol = 1e-13);

/// Certified bound on the tail integral used by lstar_norm_a1.
double lstar_tail_bound(const ProblemInstance& inst, double truncation_radius);

}  // namespace homsolve
