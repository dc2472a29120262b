#include <doctest.h>

#include "homsolve/verify.hpp"

#include <cmath>

using namespace homsolve;

namespace {

// constant diffusion + slowly decaying weight on a unit interval: the barrier
// scale tau is large enough to be meaningfully exercised
ProblemInstance barrier_instance() {
  ProblemInstance inst =
      make_instance("constant", "laplace", "signed_power", 1.5, 3.0, 3.0, 0.01, 0.5);
  inst.lambda = 0.5 * compute_constants(inst, 1.0).Lambda_star;
  return inst;
}

GalerkinSolution solve_interval(const ProblemInstance& inst, double n, int M) {
  const ConstantsReport consts = compute_constants(inst, n);
  const EvenBasis basis = build_basis(n, M);
  return solve_Pn(inst, consts, basis, ContinuationOptions{});
}

SampledFunction constant_sample(double n, Eigen::Index N, double value) {
  SampledFunction s;
  s.t = symmetric_grid(n, N);
  s.u = ArrayX::Constant(N, value);
  s.du = ArrayX::Zero(N);
  s.ddu = ArrayX::Zero(N);
  return s;
}

}  // namespace

TEST_CASE("evenness, positivity and boundary checks on an accepted run") {
  ProblemInstance inst = default_instance();
  inst.lambda = 0.5 * compute_constants(inst, 5.0).Lambda_star;
  const HomoclinicSolution sol = solve_homoclinic(inst, ContinuationOptions{});
  REQUIRE(sol.status == PipelineStatus::Converged);
  SampledFunction s;
  s.t = sol.t;
  s.u = sol.v;
  s.du = sol.dv;
  StraussApproximant fk(inst.g, sol.k_final, inst.theta);
  s.ddu = second_derivative_from_equation(inst, fk, s.t, s.u, s.du, sol.forcing_scale);
  const auto checks = check_even_positive(s, sol.n_final);
  REQUIRE(checks.size() == 3);
  for (const auto& c : checks) {
    INFO(c.name, " witness=", c.witness_value);
    CHECK(c.pass);
  }
  CHECK(check_interior_minimum_bound(inst, s, sol.n_final).pass);
  CHECK(check_decay(s, sol.n_final).pass);
}

TEST_CASE("the zero function is even but not strictly positive") {
  const SampledFunction s = constant_sample(2.0, 201, 0.0);
  const auto checks = check_even_positive(s, 2.0);
  CHECK(checks[0].pass);        // evenness
  CHECK_FALSE(checks[1].pass);  // strict positivity
  CHECK(checks[2].pass);        // boundary
}

TEST_CASE("an odd perturbation breaks evenness with a witness") {
  SampledFunction s = constant_sample(2.0, 201, 1.0);
  s.u += 1e-6 * s.t;
  const auto checks = check_even_positive(s, 2.0);
  CHECK_FALSE(checks[0].pass);
  CHECK(checks[0].witness_value > 1e-12);
}

TEST_CASE("interior minimum bound is vacuous at lambda = 0") {
  ProblemInstance inst = default_instance();
  inst.lambda = 0.0;
  SampledFunction s = constant_sample(2.0, 201, 0.5);  // u'' = 0 >= 0 everywhere
  const CheckResult c = check_interior_minimum_bound(inst, s, 2.0);
  CHECK(c.pass);
}

TEST_CASE("interior minimum bound catches a too-small interior minimum") {
  ProblemInstance inst = default_instance();
  inst.lambda = 0.5;
  inst.a1 = catalog_weight_laplace();
  // bound = (0.5 e^{-2})^2 ~ 4.58e-3 on [-2,2]; a flat sample below it fails
  SampledFunction s = constant_sample(2.0, 201, 1e-4);
  const CheckResult c = check_interior_minimum_bound(inst, s, 2.0);
  CHECK_FALSE(c.pass);
}

TEST_CASE("subsolution barrier on a monotone-core solution") {
  const ProblemInstance inst = barrier_instance();
  const GalerkinSolution sol = solve_interval(inst, 1.0, 6);
  const SampledFunction s = sampled_from_solution(inst, sol);
  const double tau = tau_subsolution_scale(inst, 1.0);
  CHECK(tau > 1e-8);  // meaningfully large for this instance
  const CheckResult c = check_subsolution_barrier(s, 1.0, tau);
  CHECK(c.applicable);
  CHECK(c.pass);
}

TEST_CASE("barrier with tau = 0 passes for any nonnegative sample") {
  const SampledFunction s = constant_sample(1.0, 101, 0.3);
  const CheckResult c = check_subsolution_barrier(s, 1.0, 0.0);
  CHECK(c.pass);
}

TEST_CASE("a dip below the barrier fails with a witness") {
  const EigenPair ep = eigen_pair(1.0);
  SampledFunction s = constant_sample(1.0, 101, 0.0);
  for (Eigen::Index i = 0; i < s.t.size(); ++i)
    s.u[i] = 5e-4 * ep.phi1(s.t[i]);  // monotone on each half, below tau phi1
  for (Eigen::Index i = 0; i < s.t.size(); ++i)
    s.du[i] = -5e-4 * (M_PI / 2.0) * std::sin(M_PI * s.t[i] / 2.0);
  const CheckResult c = check_subsolution_barrier(s, 1.0, 1e-3);
  CHECK(c.applicable);
  CHECK_FALSE(c.pass);
  CHECK(c.witness_value < -1e-6);
}

TEST_CASE("mixed-sign derivative on (-n,0) defers to the interior-minimum logic") {
  SampledFunction s = constant_sample(1.0, 101, 0.1);
  for (Eigen::Index i = 0; i < s.t.size(); ++i) s.du[i] = std::sin(8.0 * s.t[i]);
  const CheckResult c = check_subsolution_barrier(s, 1.0, 1e-3);
  CHECK_FALSE(c.applicable);
  CHECK(c.note.find("Case 2") != std::string::npos);
}

TEST_CASE("comparison criterion on the barrier pair of an accepted solve") {
  const ProblemInstance inst = barrier_instance();
  const GalerkinSolution sol = solve_interval(inst, 1.0, 6);
  const SampledFunction w = sampled_from_solution(inst, sol);
  const double tau = tau_subsolution_scale(inst, 1.0);
  const EigenPair ep = eigen_pair(1.0);
  SampledFunction v;
  v.t = w.t;
  v.u.resize(w.t.size());
  v.du.resize(w.t.size());
  v.ddu.resize(w.t.size());
  for (Eigen::Index i = 0; i < w.t.size(); ++i) {
    v.u[i] = tau * ep.phi1(w.t[i]);
    v.du[i] = -tau * (M_PI / 2.0) * std::sin(M_PI * w.t[i] / 2.0);
    v.ddu[i] = tau * ep.phi1_second(w.t[i]);
  }
  const double a_min = weight_min(inst, 1.0);
  const double lam = inst.lambda;
  const double q = inst.q;
  ScalarFn sigma = [a_min, lam, q](double x) { return lam * a_min * std::pow(x, q - 1.0); };
  const CheckResult c = check_comparison_premises(inst, v, w, sigma, 1.0);
  CHECK(c.applicable);
  CHECK(c.pass);
}

TEST_CASE("comparison criterion: v == w is trivially ordered") {
  const ProblemInstance inst = barrier_instance();
  const SampledFunction s = constant_sample(1.0, 101, 0.2);
  const CheckResult c =
      check_comparison_premises(inst, s, s, [](double x) { return std::sqrt(x); }, 1.0);
  CHECK(c.pass);
}

TEST_CASE("comparison criterion skips when sigma(s)/s is not strictly decreasing") {
  const ProblemInstance inst = barrier_instance();
  SampledFunction v = constant_sample(1.0, 101, 0.1);
  SampledFunction w = constant_sample(1.0, 101, 0.2);
  const CheckResult c =
      check_comparison_premises(inst, v, w, [](double x) { return x; }, 1.0);
  CHECK_FALSE(c.applicable);
  CHECK(c.note.find("not strictly decreasing") != std::string::npos);
}

TEST_CASE("decay check fails on a domain too small for the tail") {
  ProblemInstance inst = default_instance();
  inst.lambda = 0.5 * compute_constants(inst, 2.0).Lambda_star;
  const GalerkinSolution sol = solve_interval(inst, 2.0, 6);
  const SampledFunction s = sampled_from_solution(inst, sol);
  const CheckResult c = check_decay(s, 2.0);
  CHECK_FALSE(c.pass);
  CHECK(c.witness_value > 1e-6);
}

TEST_CASE("decay check passes degenerately on the zero function") {
  const SampledFunction s = constant_sample(4.0, 401, 0.0);
  CHECK(check_decay(s, 4.0).pass);
}

TEST_CASE("aggregate verification of a full run passes every applicable check") {
  ProblemInstance inst = default_instance();
  inst.lambda = 0.5 * compute_constants(inst, 5.0).Lambda_star;
  const HomoclinicSolution sol = solve_homoclinic(inst, ContinuationOptions{});
  REQUIRE(sol.status == PipelineStatus::Converged);
  const ConstantsReport consts = compute_constants(inst, sol.n_final);
  const VerificationReport rep = verify_homoclinic(inst, sol, consts);
  for (const auto& c : rep.checks) {
    INFO(c.name, " witness=", c.witness_value, " note=", c.note);
    if (c.applicable) CHECK(c.pass);
  }
  CHECK(rep.all_pass());
}

TEST_CASE("a report never passes checks whose witness violates the tolerance") {
  ProblemInstance inst = default_instance();
  inst.lambda = 0.5 * compute_constants(inst, 5.0).Lambda_star;
  HomoclinicSolution sol = solve_homoclinic(inst, ContinuationOptions{});
  REQUIRE(sol.status == PipelineStatus::Converged);
  // corrupt the merged table with an odd, sign-breaking bump
  for (Eigen::Index i = 0; i < sol.t.size(); ++i)
    sol.v[i] += 1e-3 * std::tanh(sol.t[i]);
  const ConstantsReport consts = compute_constants(inst, sol.n_final);
  const VerificationReport rep = verify_homoclinic(inst, sol, consts);
  CHECK_FALSE(rep.all_pass());
  for (const auto& c : rep.checks)
    if (c.name == "evenness") {
      CHECK_FALSE(c.pass);
      CHECK(c.witness_value > c.tolerance);
    }
}
