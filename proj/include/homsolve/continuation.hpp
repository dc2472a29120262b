#pragma once

#include "homsolve/constants.hpp"
#include "homsolve/galerkin.hpp"

#include <vector>

namespace homsolve {

struct ContinuationOptions {
  double drift_tol = 1e-8;     // coefficient movement between k levels
  double fk_gap_tol = 1e-6;    // sup |f_k(|u'|) - g(|u'|)| on the nodes
  int max_k_doublings = 40;
  long long k_start = 0;       // 0 = use k_star (or the fallback near Lambda*)
  double agree_tol = 1e-6;     // cross-level agreement on the common interval
  double tail_tol = 1e-6;      // sup |v| on |t| >= n_final/2
  std::vector<double> n_schedule = {4.0, 8.0, 16.0, 32.0};
  double M_per_unit = 3.0;
  double residual_tol = 1e-10;
  Eigen::Index output_points_per_unit = 200;
  int certificate_samples = 200;
  unsigned long long seed = 12345;
  int threads = 1;
  double sweep_slack = 1e-8;
};

struct KTrace {
  std::vector<long long> ks;
  std::vector<double> drifts;   // drifts[0] corresponds to ks[1]
  std::vector<double> fk_gaps;
};

/// Solution of the regularized problem driven to the k -> infinity limit:
/// solves along k = k0, 2 k0, 4 k0, ... warm-starting each level, and stops
/// when both the coefficient drift and the f_k-vs-g gap are below tolerance.
/// The final 1/k forcing is retained and recorded, not zeroed.
GalerkinSolution solve_Pn(const ProblemInstance& inst, const ConstantsReport& consts,
                          const EvenBasis& basis, const ContinuationOptions& opts,
                          const Vector* warm_start = nullptr, KTrace* trace = nullptr);

enum class PipelineStatus { Converged, NoHomoclinic };

struct LevelRecord {
  double n = 0.0;
  int M = 0;
  long long k_final = 0;
  double forcing_scale = 0.0;
  Vector xi;
  double norm_W12 = 0.0;
  double norm_inf = 0.0;
  double residual_sup = 0.0;
  double certificate_min = 0.0;
  bool certificate = false;
  double agreement = std::numeric_limits<double>::quiet_NaN();  // vs previous level
  double tail_sup = 0.0;
  KTrace trace;
  ArrayX t, u, du;  // output-grid samples of this level
};

struct HomoclinicSolution {
  PipelineStatus status = PipelineStatus::NoHomoclinic;
  std::string reason;
  double lambda = 0.0;
  double n_final = 0.0;
  std::vector<LevelRecord> levels;
  ArrayX t, v, dv;      // merged samples from the last level
  double tail_sup = 0.0;
  long long k_final = 0;
  double forcing_scale = 0.0;
};

/// Runs solve_Pn across the n schedule with zero-extension warm starts and
/// stops when consecutive levels agree on the common interval and the tail is
/// below tolerance. Solver failures and an exhausted schedule produce
/// PipelineStatus::NoHomoclinic rather than an exception.
HomoclinicSolution solve_homoclinic(const ProblemInstance& inst,
                                    const ContinuationOptions& opts);

struct SweepRow {
  double lambda = 0.0;
  double norm_W12 = 0.0;
  double norm_inf = 0.0;
  double bound_rhs = 0.0;   // lambda 2 C2 r^q / gamma
  double sup_bound = 0.0;   // C r_tilde(lambda)
  bool bound_ok = false;
};

/// Solves at fixed n for each lambda (lambda = 0 rows are trivial) and checks
/// ||u||^2 <= lambda 2 C2 r^q / gamma and ||u||_inf <= C r_tilde row by row.
/// Violations raise NumericsError("asymptotic bound breach").
std::vector<SweepRow> lambda_sweep(const ProblemInstance& inst,
                                   const std::vector<double>& lambdas, double n,
                                   const ContinuationOptions& opts);

/// Coefficients of the zero-extension of a solution re-projected onto a basis
/// on a larger interval.
Vector project_extension(const EvenBasis& from, const Vector& xi,
                         const EvenBasis& to);

}  // namespace homsolve
