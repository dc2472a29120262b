#include "homsolve/galerkin.hpp"

#include <Eigen/LU>

#include <cmath>

namespace homsolve {

namespace {

// source terms paired against e_j at one node
double zero_order_term(const ProblemInstance& inst, const StraussApproximant& fk,
                       double t, double u, double du, double a1v,
                       const AssemblyOptions& opts) {
  double s = inst.lambda * a1v * std::pow(std::abs(u), inst.q - 1.0) +
             std::pow(std::abs(u), inst.p - 1.0) + fk.eval(std::abs(du)) +
             opts.forcing_scale;
  if (opts.extra_source) s += opts.extra_source(t);
  return s;
}

}  // namespace

Vector assemble_F(const ProblemInstance& inst, const EvenBasis& basis,
                  const StraussApproximant& fk, const Vector& xi,
                  const AssemblyOptions& opts) {
  if (xi.size() != basis.M()) throw ConfigError("assemble_F: coefficient length != M");
  const QuadratureRule& quad = basis.quad();
  const Eigen::Index Q = quad.nodes.size();
  ArrayX u, du;
  basis.synthesize_at_nodes(xi, u, du);
  const ArrayX a1v = apply(inst.a1.value, quad.nodes);
  ArrayX flux(Q), source(Q);
  for (Eigen::Index i = 0; i < Q; ++i) {
    const double Au = inst.A(u[i]);
    if (!std::isfinite(Au) || !std::isfinite(u[i]) || !std::isfinite(du[i]))
      throw NumericsError("assembly failure at t=" + std::to_string(quad.nodes[i]));
    flux[i] = Au * du[i];
    source[i] =
        u[i] - zero_order_term(inst, fk, quad.nodes[i], u[i], du[i], a1v[i], opts);
    if (!std::isfinite(source[i]))
      throw NumericsError("assembly failure at t=" + std::to_string(quad.nodes[i]));
  }
  const ArrayX wf = quad.weights * flux;
  const ArrayX ws = quad.weights * source;
  return basis.derivatives().transpose() * wf.matrix() +
         basis.values().transpose() * ws.matrix();
}

namespace {

struct NewtonOutcome {
  Vector xi;
  double fnorm = std::numeric_limits<double>::infinity();
  bool converged = false;
};

Vector clamp_to_ball(Vector xi, double r) {
  const double nrm = xi.norm();
  if (nrm > r) xi *= r / nrm;
  return xi;
}

NewtonOutcome damped_newton(const ProblemInstance& inst, const EvenBasis& basis,
                            const StraussApproximant& fk, double r,
                            const Vector& start, const SolveOptions& opts) {
  const int M = basis.M();
  NewtonOutcome out;
  Vector xi = clamp_to_ball(start, r);
  Vector F = assemble_F(inst, basis, fk, xi, opts.assembly);
  double fn = F.norm();
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (fn <= opts.residual_tol) {
      out.xi = xi;
      out.fnorm = fn;
      out.converged = true;
      return out;
    }
    Matrix J(M, M);
    for (int j = 0; j < M; ++j) {
      const double h = 1e-7 * (1.0 + std::abs(xi[j]));
      Vector xp = xi;
      xp[j] += h;
      J.col(j) = (assemble_F(inst, basis, fk, xp, opts.assembly) - F) / h;
    }
    Eigen::PartialPivLU<Matrix> lu(J);
    Vector dir = lu.solve(-F);
    if (!dir.allFinite()) {
      // tiny diagonal shift when the finite-difference Jacobian is singular
      J.diagonal().array() += 1e-12 + 1e-12 * J.cwiseAbs().maxCoeff();
      dir = J.partialPivLu().solve(-F);
      if (!dir.allFinite()) break;
    }
    double step = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      Vector trial = clamp_to_ball(xi + step * dir, r);
      Vector Ft;
      try {
        Ft = assemble_F(inst, basis, fk, trial, opts.assembly);
      } catch (const NumericsError&) {
        step *= 0.5;
        continue;
      }
      const double fnt = Ft.norm();
      if (fnt <= (1.0 - 1e-4 * step) * fn) {
        if ((trial - xi).norm() < 1e-16 * (1.0 + xi.norm())) break;
        xi = std::move(trial);
        F = std::move(Ft);
        fn = fnt;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  if (fn <= opts.residual_tol) {
    out.xi = xi;
    out.fnorm = fn;
    out.converged = true;
  }
  return out;
}

std::vector<Vector> multistart_points(int M, double r) {
  std::vector<Vector> starts;
  starts.push_back(Vector::Zero(M));
  const double rho = r / 4.0;
  auto axis = [M](int j) { return Vector(Vector::Unit(M, j)); };
  if (M >= 2) {
    const double inv = 1.0 / std::sqrt(2.0);
    starts.push_back(rho * axis(0));
    starts.push_back(-rho * axis(0));
    starts.push_back(rho * axis(1));
    starts.push_back(-rho * axis(1));
    starts.push_back(rho * inv * (axis(0) + axis(1)));
    starts.push_back(rho * inv * (axis(0) - axis(1)));
    starts.push_back(rho * inv * (-axis(0) + axis(1)));
    starts.push_back(rho * inv * (-axis(0) - axis(1)));
  } else {
    starts.push_back(rho * axis(0));
    starts.push_back(-rho * axis(0));
  }
  return starts;
}

}  // namespace

GalerkinSolution solve_in_ball(const ProblemInstance& inst, const EvenBasis& basis,
                               const StraussApproximant& fk, double r,
                               const SolveOptions& opts, SolveDiagnostics* diag) {
  std::vector<Vector> roots;
  int runs = 0;
  auto consider = [&roots, r](const NewtonOutcome& o) {
    if (!o.converged || o.xi.norm() > r * (1.0 + 1e-12)) return;
    for (const Vector& q : roots)
      if ((q - o.xi).norm() <= 1e-8 * (1.0 + q.norm())) return;
    roots.push_back(o.xi);
  };

  bool warm_hit = false;
  if (opts.warm_start) {
    ++runs;
    NewtonOutcome o = damped_newton(inst, basis, fk, r, *opts.warm_start, opts);
    consider(o);
    warm_hit = o.converged && !roots.empty();
  }
  if (!warm_hit) {
    for (const Vector& s : multistart_points(basis.M(), r)) {
      ++runs;
      consider(damped_newton(inst, basis, fk, r, s, opts));
    }
  }
  if (diag) {
    diag->roots = roots;
    diag->newton_runs = runs;
  }
  if (roots.empty()) throw SolverStall("solver exhausted");

  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(roots.size()); ++i)
    if (roots[i].norm() > roots[best].norm()) best = i;

  GalerkinSolution sol;
  sol.coeffs.xi = roots[best];
  sol.n = basis.n();
  sol.M = basis.M();
  sol.k = fk.k();
  sol.lambda = inst.lambda;
  sol.forcing_scale = opts.assembly.forcing_scale;
  sol.t = symmetric_grid(basis.n(), opts.output_points);
  basis.synthesize(sol.coeffs.xi, sol.t, sol.u, sol.du);
  sol.residual_sup =
      assemble_F(inst, basis, fk, sol.coeffs.xi, opts.assembly).cwiseAbs().maxCoeff();
  return sol;
}

double weak_residual(const ProblemInstance& inst, const EvenBasis& basis,
                     const StraussApproximant& fk, const GalerkinSolution& sol,
                     int probe_count, unsigned long long seed) {
  const QuadratureRule& quad = basis.quad();
  const Eigen::Index Q = quad.nodes.size();
  ArrayX u, du;
  basis.synthesize_at_nodes(sol.coeffs.xi, u, du);
  const ArrayX a1v = apply(inst.a1.value, quad.nodes);
  ArrayX flux(Q), source(Q);
  AssemblyOptions opts;
  opts.forcing_scale = sol.forcing_scale;
  for (Eigen::Index i = 0; i < Q; ++i) {
    flux[i] = inst.A(u[i]) * du[i];
    source[i] =
        u[i] - zero_order_term(inst, fk, quad.nodes[i], u[i], du[i], a1v[i], opts);
  }

  auto defect = [&](const Vector& c) {
    double acc = 0.0;
    const ArrayX v = (basis.values() * c).array();
    const ArrayX dv = (basis.derivatives() * c).array();
    for (Eigen::Index i = 0; i < Q; ++i)
      acc += quad.weights[i] * (flux[i] * dv[i] + source[i] * v[i]);
    return std::abs(acc);
  };

  double worst = 0.0;
  const int nb = std::min(probe_count, basis.M());
  for (int j = 0; j < nb; ++j) worst = std::max(worst, defect(Vector::Unit(basis.M(), j)));

  // ten seeded random syntheses from the span
  unsigned long long state = seed ? seed : 1;
  auto next_unit = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (int rep = 0; rep < 10; ++rep) {
    Vector c(basis.M());
    for (int j = 0; j < basis.M(); ++j) c[j] = 2.0 * next_unit() - 1.0;
    if (c.norm() == 0.0) c[0] = 1.0;
    c.normalize();
    worst = std::max(worst, defect(c));
  }
  return worst;
}

ArrayX second_derivative_from_equation(const ProblemInstance& inst,
                                       const StraussApproximant& fk, const ArrayX& t,
                                       const ArrayX& u, const ArrayX& du,
                                       double forcing_scale) {
  ArrayX ddu(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double z = u[i];
    const double pz = du[i];
    const double num = z - inst.lambda * inst.a1.value(t[i]) *
                               std::pow(std::abs(z), inst.q - 1.0) -
                       std::pow(std::abs(z), inst.p - 1.0) - fk.eval(std::abs(pz)) -
                       forcing_scale - inst.dA(z) * pz * pz;
    ddu[i] = num / inst.A(z);
  }
  return ddu;
}

double strong_residual(const ProblemInstance& inst, const EvenBasis& basis,
                       const StraussApproximant& fk, const GalerkinSolution& sol,
                       double margin, Eigen::Index grid_points) {
  const double half = basis.n() - std::max(margin, 0.01 * basis.n());
  const ArrayX t = symmetric_grid(half, grid_points);
  ArrayX u, du, ddu;
  basis.synthesize(sol.coeffs.xi, t, u, du, ddu);
  for (Eigen::Index i = 0; i < t.size(); ++i)
    if (inst.A(u[i]) < 0.5 * inst.gamma) throw NumericsError("hypothesis breach");
  const ArrayX formula =
      second_derivative_from_equation(inst, fk, t, u, du, sol.forcing_scale);
  return (ddu - formula).abs().maxCoeff();
}

double lieberman_envelope_margin(const ProblemInstance& inst,
                                 const StraussApproximant& fk,
                                 const GalerkinSolution& sol, double L) {
  double worst = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < sol.t.size(); ++i) {
    const double z = sol.u[i];
    const double p = std::abs(sol.du[i]);
    const double B = z - (inst.lambda * inst.a1.value(sol.t[i]) *
                              std::pow(std::abs(z), inst.q - 1.0) +
                          std::pow(std::abs(z), inst.p - 1.0) + fk.eval(p) +
                          sol.forcing_scale);
    worst = std::min(worst, L * (1.0 + p) * (1.0 + p) - std::abs(B));
  }
  return worst;
}

}  // namespace homsolve
