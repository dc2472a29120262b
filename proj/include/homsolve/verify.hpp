#pragma once

#include "homsolve/constants.hpp"
#include "homsolve/continuation.hpp"

#include <vector>

namespace homsolve {

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool pass = false;
  double witness_value = 0.0;
  double witness_point = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (c.applicable && !c.pass) return false;
    return true;
  }
};

/// Sampled function with both derivatives, the shape every check consumes.
struct SampledFunction {
  ArrayX t, u, du, ddu;
};

struct VerifyOptions {
  double evenness_tol = 1e-12;
  double boundary_tol = 1e-10;
  double positivity_margin_fraction = 0.125;  // skip this fraction at each end
  double interior_margin = 0.5;               // for the interior-minimum bound
  double barrier_tol = 1e-12;
  double premise_tol = 1e-12;
  double tail_tol = 1e-6;
  double monotone_tol = 1e-12;
};

/// Evenness to roundoff, strict positivity away from the ends, and vanishing
/// boundary values.
std::vector<CheckResult> check_even_positive(const SampledFunction& s, double n,
                                             const VerifyOptions& opts = {});

/// At grid points with u'' >= 0 and |t| <= n - margin the solution exceeds
/// (lambda a_min)^{1/(2-q)}.
CheckResult check_interior_minimum_bound(const ProblemInstance& inst,
                                         const SampledFunction& s, double n,
                                         const VerifyOptions& opts = {});

/// u >= tau phi1 on the grid; applicable only when u' >= 0 on (-n, 0) at grid
/// resolution (otherwise skipped with the reason recorded).
CheckResult check_subsolution_barrier(const SampledFunction& s, double n, double tau,
                                      const VerifyOptions& opts = {});

/// The comparison criterion: checks that s -> sigma(s)/s is strictly
/// decreasing and the five premises hold for the pair (v, w) on (-rho, rho);
/// when they do, v <= w pointwise must follow, and a violation is flagged as a
/// hard inconsistency.
CheckResult check_comparison_premises(const ProblemInstance& inst,
                                      const SampledFunction& v,
                                      const SampledFunction& w, const ScalarFn& sigma,
                                      double rho, const VerifyOptions& opts = {});

/// tail_sup below tolerance and |u| nonincreasing beyond the last interior
/// critical point.
CheckResult check_decay(const SampledFunction& s, double n_final,
                        const VerifyOptions& opts = {});

/// All applicable checks for a finished pipeline run.
VerificationReport verify_homoclinic(const ProblemInstance& inst,
                                     const HomoclinicSolution& sol,
                                     const ConstantsReport& consts,
                                     const VerifyOptions& opts = {});

/// Checks applicable to a single-interval solution.
VerificationReport verify_interval_solution(const ProblemInstance& inst,
                                            const GalerkinSolution& sol,
                                            const ConstantsReport& consts,
                                            const VerifyOptions& opts = {});

/// Builds the sampled view (with the strong-form second derivative) of an
/// interval solution.
SampledFunction sampled_from_solution(const ProblemInstance& inst,
                                      const GalerkinSolution& sol);

}  // namespace homsolve
