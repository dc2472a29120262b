#include "homsolve/continuation.hpp"

#include <cmath>
#include <future>
#include <memory>

namespace homsolve {

namespace {

long long initial_k(const ProblemInstance& inst, const ConstantsReport& consts,
                    double n, const ContinuationOptions& opts) {
  if (opts.k_start > 0) return opts.k_start;
  if (consts.rho1 > 0.0 && consts.k_star > 0) return consts.k_star;
  // at or beyond Lambda*: borrow the schedule of the half-threshold parameter,
  // where the certificate machinery is available
  ProblemInstance ref = inst;
  ref.lambda = 0.5 * consts.Lambda_star;
  const double rho_ref =
      rho1(consts.r, inst.gamma, ref.lambda, consts.C2, consts.delta1, inst.q);
  return k_star(rho_ref, consts.C1, n, consts.delta1, std::sqrt(2.0 * n));
}

double fk_gap_on_nodes(const ProblemInstance& inst, const EvenBasis& basis,
                       const StraussApproximant& fk, const Vector& xi) {
  ArrayX u, du;
  basis.synthesize_at_nodes(xi, u, du);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < du.size(); ++i) {
    const double s = std::abs(du[i]);
    worst = std::max(worst, std::abs(fk.eval(s) - inst.g(s)));
  }
  return worst;
}

}  // namespace

GalerkinSolution solve_Pn(const ProblemInstance& inst, const ConstantsReport& consts,
                          const EvenBasis& basis, const ContinuationOptions& opts,
                          const Vector* warm_start, KTrace* trace) {
  const double n = basis.n();
  long long k = initial_k(inst, consts, n, opts);

  bool certified = false;
  double certificate_min = 0.0;
  if (consts.rho1 > 0.0 && consts.k_star > 0) {
    StraussApproximant fk0(inst.g, k, inst.theta);
    const CertificateReport cert = sphere_sign_certificate(
        inst, basis, fk0, consts.r, opts.certificate_samples, 1.0 / static_cast<double>(k),
        opts.seed);
    if (!cert.pass)
      throw NumericsError("sphere sign certificate failed at k=" + std::to_string(k));
    certified = true;
    certificate_min = cert.min_value;
  }

  GalerkinSolution sol;
  Vector prev;
  bool have_prev = false;
  for (int level = 0; level <= opts.max_k_doublings; ++level) {
    StraussApproximant fk(inst.g, k, inst.theta);
    SolveOptions sopts;
    sopts.residual_tol = opts.residual_tol;
    sopts.assembly.forcing_scale = 1.0 / static_cast<double>(k);
    sopts.output_points =
        static_cast<Eigen::Index>(opts.output_points_per_unit * n) + 1;
    if (have_prev)
      sopts.warm_start = prev;
    else if (warm_start)
      sopts.warm_start = *warm_start;
    sol = solve_in_ball(inst, basis, fk, consts.r, sopts);
    sol.certificate = certified;
    sol.certificate_min = certificate_min;

    const double gap = fk_gap_on_nodes(inst, basis, fk, sol.coeffs.xi);
    if (trace) {
      trace->ks.push_back(k);
      trace->fk_gaps.push_back(gap);
    }
    if (have_prev) {
      const double drift = (sol.coeffs.xi - prev).norm();
      if (trace) trace->drifts.push_back(drift);
      if (drift <= opts.drift_tol && gap <= opts.fk_gap_tol) return sol;
    }
    prev = sol.coeffs.xi;
    have_prev = true;
    if (k > (1LL << 62) / 2) break;
    k *= 2;
  }
  throw SolverStall("k-continuation stalled");
}

Vector project_extension(const EvenBasis& from, const Vector& xi,
                         const EvenBasis& to) {
  ArrayX u, du;
  from.synthesize_at_nodes(xi, u, du);
  const QuadratureRule& quad = from.quad();
  Vector out = Vector::Zero(to.M());
  for (int l = 1; l <= to.M(); ++l) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < quad.nodes.size(); ++i)
      acc += quad.weights[i] * (u[i] * to.eval(l, quad.nodes[i]) +
                                du[i] * to.eval_deriv(l, quad.nodes[i]));
    out[l - 1] = acc;
  }
  return out;
}

namespace {

double tail_sup_of(const ArrayX& t, const ArrayX& u, double from_radius) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i)
    if (std::abs(t[i]) >= from_radius) worst = std::max(worst, std::abs(u[i]));
  return worst;
}

double agreement_sup(const EvenBasis& coarse, const Vector& xi_coarse,
                     const EvenBasis& fine, const Vector& xi_fine, double radius,
                     Eigen::Index points) {
  const ArrayX t = symmetric_grid(radius, points);
  ArrayX uc, duc, uf, duf;
  coarse.synthesize(xi_coarse, t, uc, duc);
  fine.synthesize(xi_fine, t, uf, duf);
  return (uc - uf).abs().maxCoeff();
}

}  // namespace

HomoclinicSolution solve_homoclinic(const ProblemInstance& inst,
                                    const ContinuationOptions& opts) {
  HomoclinicSolution out;
  out.lambda = inst.lambda;
  if (opts.n_schedule.empty())
    throw ConfigError("solve_homoclinic: empty n schedule");

  if (inst.lambda == 0.0) {
    // the limit problem: the zero function, trivially homoclinic
    const double n0 = opts.n_schedule.front();
    out.status = PipelineStatus::Converged;
    out.reason = "lambda = 0: trivial solution";
    out.n_final = n0;
    out.t = symmetric_grid(n0, static_cast<Eigen::Index>(opts.output_points_per_unit * n0) + 1);
    out.v = ArrayX::Zero(out.t.size());
    out.dv = ArrayX::Zero(out.t.size());
    out.tail_sup = 0.0;
    return out;
  }

  std::unique_ptr<EvenBasis> prev_basis;
  Vector prev_xi;
  try {
    for (std::size_t li = 0; li < opts.n_schedule.size(); ++li) {
      const double n = opts.n_schedule[li];
      const int M = static_cast<int>(std::ceil(opts.M_per_unit * n));
      const ConstantsReport consts = compute_constants(inst, n);
      EvenBasis basis = build_basis(n, M);

      Vector warm;
      const Vector* warm_ptr = nullptr;
      if (prev_basis) {
        warm = project_extension(*prev_basis, prev_xi, basis);
        warm_ptr = &warm;
      }
      LevelRecord rec;
      rec.n = n;
      rec.M = M;
      GalerkinSolution sol = solve_Pn(inst, consts, basis, opts, warm_ptr, &rec.trace);
      rec.k_final = sol.k;
      rec.forcing_scale = sol.forcing_scale;
      rec.xi = sol.coeffs.xi;
      rec.norm_W12 = sol.coeffs.norm_W12();
      rec.norm_inf = sol.u.abs().maxCoeff();
      rec.residual_sup = sol.residual_sup;
      rec.certificate = sol.certificate;
      rec.certificate_min = sol.certificate_min;
      rec.tail_sup = tail_sup_of(sol.t, sol.u, 0.5 * n);
      rec.t = sol.t;
      rec.u = sol.u;
      rec.du = sol.du;

      bool agreed = false;
      if (prev_basis) {
        const double common = prev_basis->n() - 1.0;
        rec.agreement = agreement_sup(
            *prev_basis, prev_xi, basis, sol.coeffs.xi, common,
            static_cast<Eigen::Index>(opts.output_points_per_unit * common) + 1);
        agreed = rec.agreement <= opts.agree_tol;
      }
      out.levels.push_back(rec);

      if (agreed && rec.tail_sup <= opts.tail_tol) {
        out.status = PipelineStatus::Converged;
        out.n_final = n;
        out.t = sol.t;
        out.v = sol.u;
        out.dv = sol.du;
        out.tail_sup = rec.tail_sup;
        out.k_final = sol.k;
        out.forcing_scale = sol.forcing_scale;
        return out;
      }
      prev_basis = std::make_unique<EvenBasis>(basis);
      prev_xi = sol.coeffs.xi;
    }
  } catch (const SolverStall& e) {
    out.status = PipelineStatus::NoHomoclinic;
    out.reason = std::string("no numerical homoclinic at this lambda (") + e.what() + ")";
    return out;
  } catch (const NumericsError& e) {
    out.status = PipelineStatus::NoHomoclinic;
    out.reason = std::string("no numerical homoclinic at this lambda (") + e.what() + ")";
    return out;
  }
  out.status = PipelineStatus::NoHomoclinic;
  out.reason = "no numerical homoclinic at this lambda (schedule exhausted)";
  return out;
}

std::vector<SweepRow> lambda_sweep(const ProblemInstance& inst,
                                   const std::vector<double>& lambdas, double n,
                                   const ContinuationOptions& opts) {
  const int M = static_cast<int>(std::ceil(opts.M_per_unit * n));
  const EvenBasis basis = build_basis(n, M);

  auto run_row = [&](double lam) {
    SweepRow row;
    row.lambda = lam;
    if (lam == 0.0) {
      row.bound_ok = true;
      return row;
    }
    ProblemInstance local = inst;
    local.lambda = lam;
    const ConstantsReport consts = compute_constants(local, n);
    GalerkinSolution sol = solve_Pn(local, consts, basis, opts, nullptr, nullptr);
    row.norm_W12 = sol.coeffs.norm_W12();
    row.norm_inf = sol.u.abs().maxCoeff();
    row.bound_rhs = lam * 2.0 * consts.C2 * std::pow(consts.r, local.q) / local.gamma;
    row.sup_bound = consts.C * consts.r_tilde;
    row.bound_ok = row.norm_W12 * row.norm_W12 <= row.bound_rhs + opts.sweep_slack &&
                   row.norm_inf <= row.sup_bound + opts.sweep_slack;
    if (!row.bound_ok) throw NumericsError("asymptotic bound breach");
    return row;
  };

  std::vector<SweepRow> rows(lambdas.size());
  if (opts.threads > 1) {
    std::vector<std::future<SweepRow>> futs;
    futs.reserve(lambdas.size());
    for (double lam : lambdas)
      futs.push_back(std::async(std::launch::async, run_row, lam));
    for (std::size_t i = 0; i < futs.size(); ++i) rows[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < lambdas.size(); ++i) rows[i] = run_row(lambdas[i]);
  }
  return rows;
}

}  // namespace homsolve
