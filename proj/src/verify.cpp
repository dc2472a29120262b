#include "homsolve/verify.hpp"

#include <cmath>

namespace homsolve {

std::vector<CheckResult> check_even_positive(const SampledFunction& s, double n,
                                             const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const Eigen::Index N = s.t.size();
  {
    CheckResult c{"evenness", true, false, 0.0, 0.0, opts.evenness_tol, ""};
    double worst = 0.0;
    for (Eigen::Index i = 0; i < N / 2; ++i) {
      const double d = std::abs(s.u[i] - s.u[N - 1 - i]);
      if (d > worst) {
        worst = d;
        c.witness_point = s.t[i];
      }
    }
    c.witness_value = worst;
    c.pass = worst <= opts.evenness_tol;
    out.push_back(c);
  }
  {
    CheckResult c{"strict interior positivity", true, false, 0.0, 0.0, 0.0, ""};
    const double margin = opts.positivity_margin_fraction * n;
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < N; ++i) {
      if (std::abs(s.t[i]) > n - margin) continue;
      if (s.u[i] < lo) {
        lo = s.u[i];
        c.witness_point = s.t[i];
      }
    }
    c.witness_value = lo;
    c.pass = lo > 0.0;
    c.note = "checked on |t| <= " + std::to_string(n - margin);
    out.push_back(c);
  }
  {
    CheckResult c{"boundary values", true, false, 0.0, n, opts.boundary_tol, ""};
    double worst = 0.0;
    for (Eigen::Index i = 0; i < N; ++i)
      if (std::abs(std::abs(s.t[i]) - n) < 1e-14)
        worst = std::max(worst, std::abs(s.u[i]));
    c.witness_value = worst;
    c.pass = worst <= opts.boundary_tol;
    out.push_back(c);
  }
  return out;
}

CheckResult check_interior_minimum_bound(const ProblemInstance& inst,
                                         const SampledFunction& s, double n,
                                         const VerifyOptions& opts) {
  CheckResult c{"interior minimum bound", true, true, 0.0, 0.0, opts.barrier_tol, ""};
  const double a_min = weight_min(inst, n);
  const double bound =
      a_min > 0.0 && inst.lambda > 0.0
          ? std::pow(inst.lambda * a_min, 1.0 / (2.0 - inst.q))
          : 0.0;
  c.note = "bound (lambda a_min)^{1/(2-q)} = " + std::to_string(bound);
  double worst = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.t.size(); ++i) {
    if (std::abs(s.t[i]) > n - opts.interior_margin) continue;
    if (s.ddu[i] < 0.0) continue;
    const double margin = s.u[i] - bound;
    if (margin < worst) {
      worst = margin;
      c.witness_point = s.t[i];
    }
  }
  c.witness_value = worst;
  c.pass = !(worst < -opts.barrier_tol);
  return c;
}

CheckResult check_subsolution_barrier(const SampledFunction& s, double n, double tau,
                                      const VerifyOptions& opts) {
  CheckResult c{"subsolution barrier", true, false, 0.0, 0.0, opts.barrier_tol, ""};
  for (Eigen::Index i = 0; i < s.t.size(); ++i) {
    if (s.t[i] >= 0.0) break;
    if (s.du[i] < -opts.monotone_tol) {
      c.applicable = false;
      c.note = "Case 2 geometry (u' changes sign on (-n,0))";
      return c;
    }
  }
  const EigenPair ep = eigen_pair(n);
  double worst = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.t.size(); ++i) {
    const double margin = s.u[i] - tau * ep.phi1(s.t[i]);
    if (margin < worst) {
      worst = margin;
      c.witness_point = s.t[i];
    }
  }
  c.witness_value = worst;
  c.pass = !(worst < -opts.barrier_tol);
  return c;
}

CheckResult check_comparison_premises(const ProblemInstance& inst,
                                      const SampledFunction& v,
                                      const SampledFunction& w, const ScalarFn& sigma,
                                      double rho, const VerifyOptions& opts) {
  CheckResult c{"comparison criterion", true, false, 0.0, 0.0, opts.premise_tol, ""};
  if (v.t.size() != w.t.size())
    throw ConfigError("check_comparison_premises: grids differ");

  if ((v.u - w.u).abs().maxCoeff() == 0.0) {
    c.pass = true;
    c.note = "v == w: conclusion holds trivially";
    return c;
  }

  // premise 0: sigma(s)/s strictly decreasing on a positive grid
  {
    const Eigen::Index K = 512;
    double prev = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i <= K; ++i) {
      const double s0 = 1e-6 + (2.0 - 1e-6) * static_cast<double>(i) / K;
      const double ratio = sigma(s0) / s0;
      if (!(ratio < prev)) {
        c.applicable = false;
        c.note = "sigma(s)/s not strictly decreasing";
        return c;
      }
      prev = ratio;
    }
  }

  auto defect_sub = [&](const SampledFunction& f, Eigen::Index i) {
    // (A(f) f')' - f + sigma(f) = A'(f) f'^2 + A(f) f'' - f + sigma(f)
    const double z = f.u[i];
    return inst.dA(z) * f.du[i] * f.du[i] + inst.A(z) * f.ddu[i] - z +
           (z > 0.0 ? sigma(z) : 0.0);
  };

  double worst = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.t.size(); ++i) {
    if (std::abs(v.t[i]) > rho) continue;
    const double dv = defect_sub(v, i);   // must be >= 0 (subsolution side)
    const double dw = -defect_sub(w, i);  // must be >= 0 (supersolution side)
    const double nonneg = std::min(v.u[i], w.u[i]);
    const double slope = v.du[i] * w.du[i];
    const double m = std::min(std::min(dv, dw), std::min(nonneg, slope));
    if (!std::isfinite(dv) || !std::isfinite(dw))
      throw NumericsError("premise not checkable");
    if (m < worst) {
      worst = m;
      c.witness_point = v.t[i];
    }
  }
  // endpoint ordering and essentially nonvanishing sample sets
  Eigen::Index zeros_v = 0, zeros_w = 0, counted = 0;
  double v_end = 0.0, w_end = 0.0;
  for (Eigen::Index i = 0; i < v.t.size(); ++i) {
    if (std::abs(v.t[i]) > rho) continue;
    ++counted;
    if (v.u[i] == 0.0) ++zeros_v;
    if (w.u[i] == 0.0) ++zeros_w;
    v_end = v.u[i];
    w_end = w.u[i];
  }
  const bool premises =
      worst >= -opts.premise_tol && v_end <= w_end + opts.premise_tol &&
      zeros_v <= counted / 100 + 2 && zeros_w <= counted / 100 + 2 &&
      v.du.abs().maxCoeff() < std::numeric_limits<double>::infinity() &&
      w.du.abs().maxCoeff() < std::numeric_limits<double>::infinity();
  if (!premises) {
    c.applicable = false;
    c.witness_value = worst;
    c.note = "premise violated";
    return c;
  }
  // conclusion: v <= w on (-rho, rho); a violation is a hard inconsistency
  double conc = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.t.size(); ++i) {
    if (std::abs(v.t[i]) > rho) continue;
    const double m = w.u[i] - v.u[i];
    if (m < conc) {
      conc = m;
      c.witness_point = v.t[i];
    }
  }
  c.witness_value = conc;
  c.pass = conc >= -opts.premise_tol;
  if (!c.pass) c.note = "premises hold but conclusion fails: inconsistency";
  return c;
}

CheckResult check_decay(const SampledFunction& s, double n_final,
                        const VerifyOptions& opts) {
  CheckResult c{"homoclinic decay", true, false, 0.0, 0.0, opts.tail_tol, ""};
  const Eigen::Index N = s.t.size();
  double tail = 0.0;
  for (Eigen::Index i = 0; i < N; ++i)
    if (std::abs(s.t[i]) >= 0.5 * n_final) tail = std::max(tail, std::abs(s.u[i]));
  c.witness_value = tail;

  // last interior critical point on [0, n]: final sign change of u'
  Eigen::Index start = N / 2;
  Eigen::Index last_crit = start;
  for (Eigen::Index i = start; i + 1 < N; ++i)
    if (s.du[i] == 0.0 || s.du[i] * s.du[i + 1] < 0.0) last_crit = i;
  bool monotone = true;
  double worst_rise = 0.0;
  for (Eigen::Index i = last_crit + 1; i + 1 < N; ++i) {
    const double rise = std::abs(s.u[i + 1]) - std::abs(s.u[i]);
    if (rise > opts.monotone_tol) {
      monotone = false;
      if (rise > worst_rise) {
        worst_rise = rise;
        c.witness_point = s.t[i];
      }
    }
  }
  c.pass = tail <= opts.tail_tol && monotone;
  if (!monotone) c.note = "|u| rises beyond the last critical point";
  return c;
}

SampledFunction sampled_from_solution(const ProblemInstance& inst,
                                      const GalerkinSolution& sol) {
  SampledFunction s;
  s.t = sol.t;
  s.u = sol.u;
  s.du = sol.du;
  StraussApproximant fk(inst.g, sol.k, inst.theta);
  s.ddu = second_derivative_from_equation(inst, fk, s.t, s.u, s.du, sol.forcing_scale);
  return s;
}

namespace {

SampledFunction sampled_from_homoclinic(const ProblemInstance& inst,
                                        const HomoclinicSolution& sol) {
  SampledFunction s;
  s.t = sol.t;
  s.u = sol.v;
  s.du = sol.dv;
  StraussApproximant fk(inst.g, std::max<long long>(sol.k_final, 1), inst.theta);
  s.ddu = second_derivative_from_equation(inst, fk, s.t, s.u, s.du, sol.forcing_scale);
  return s;
}

void append_common_checks(VerificationReport& rep, const ProblemInstance& inst,
                          const SampledFunction& s, double n,
                          const ConstantsReport& consts, const VerifyOptions& opts) {
  for (auto& c : check_even_positive(s, n, opts)) {
    if (inst.lambda == 0.0 && c.name == "strict interior positivity") {
      c.applicable = false;
      c.note = "degenerate zero-parameter limit";
    }
    rep.checks.push_back(c);
  }
  rep.checks.push_back(check_interior_minimum_bound(inst, s, n, opts));
  rep.checks.push_back(check_subsolution_barrier(s, n, consts.tau, opts));
  if (consts.a_tilde > 0.0) {
    const EigenPair ep = eigen_pair(n);
    SampledFunction barrier;
    barrier.t = s.t;
    barrier.u = ArrayX(s.t.size());
    barrier.du = ArrayX(s.t.size());
    barrier.ddu = ArrayX(s.t.size());
    for (Eigen::Index i = 0; i < s.t.size(); ++i) {
      barrier.u[i] = consts.tau * ep.phi1(s.t[i]);
      barrier.du[i] =
          -consts.tau * (M_PI / (2.0 * n)) * std::sin(M_PI * s.t[i] / (2.0 * n));
      barrier.ddu[i] = consts.tau * ep.phi1_second(s.t[i]);
    }
    const double a_min = consts.a_tilde;
    const double lam = inst.lambda;
    const double qq = inst.q;
    ScalarFn sigma = [a_min, lam, qq](double x) {
      return lam * a_min * std::pow(x, qq - 1.0);
    };
    rep.checks.push_back(check_comparison_premises(inst, barrier, s, sigma, n, opts));
  }
}

}  // namespace

VerificationReport verify_interval_solution(const ProblemInstance& inst,
                                            const GalerkinSolution& sol,
                                            const ConstantsReport& consts,
                                            const VerifyOptions& opts) {
  VerificationReport rep;
  const SampledFunction s = sampled_from_solution(inst, sol);
  append_common_checks(rep, inst, s, sol.n, consts, opts);
  return rep;
}

VerificationReport verify_homoclinic(const ProblemInstance& inst,
                                     const HomoclinicSolution& sol,
                                     const ConstantsReport& consts,
                                     const VerifyOptions& opts) {
  VerificationReport rep;
  const SampledFunction s = sampled_from_homoclinic(inst, sol);
  append_common_checks(rep, inst, s, sol.n_final, consts, opts);
  {
    CheckResult c{"cross-level agreement", true, true, 0.0, 0.0, 0.0, ""};
    double worst = 0.0;
    for (const auto& lv : sol.levels)
      if (std::isfinite(lv.agreement)) worst = std::max(worst, lv.agreement);
    c.witness_value = worst;
    c.tolerance = 1e-6;
    c.pass = !sol.levels.empty() && worst <= c.tolerance;
    rep.checks.push_back(c);
  }
  rep.checks.push_back(check_decay(s, sol.n_final, opts));
  return rep;
}

}  // namespace homsolve
