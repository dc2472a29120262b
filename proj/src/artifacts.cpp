#include "homsolve/artifacts.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace homsolve {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::string effective_output_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("HOMSOLVE_OUTPUT_DIR"); env && *env)
    return std::string(env);
  return cfg.output_dir;
}

namespace {

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

json json_of_constants(const ConstantsReport& c) {
  return json{{"C", c.C},
              {"C1", c.C1},
              {"C2", c.C2},
              {"delta1", c.delta1},
              {"r", c.r},
              {"rho1", c.rho1},
              {"Lambda_star", c.Lambda_star},
              {"k_star", c.k_star},
              {"lambda1", c.lambda1},
              {"tau", c.tau},
              {"r_tilde", c.r_tilde},
              {"a_tilde", c.a_tilde},
              {"a_tilde_R", c.a_tilde_R},
              {"sigma1", c.sigma1},
              {"Lambda", c.Lambda},
              {"m", c.m},
              {"C_Lambda", c.C_Lambda},
              {"delta", c.delta},
              {"lambda0", c.lambda0},
              {"nonexistence_threshold_ok", c.nonexistence_threshold_ok},
              {"A_tilde", c.A_tilde},
              {"L", c.L},
              {"psi_norm", c.psi_norm},
              {"n", c.n},
              {"R", c.R},
              {"strauss_k_ref", c.strauss_k_ref}};
}

json json_of_checks(const VerificationReport& rep) {
  json arr = json::array();
  for (const auto& c : rep.checks)
    arr.push_back(json{{"name", c.name},
                       {"applicable", c.applicable},
                       {"pass", c.pass},
                       {"witness_value", c.witness_value},
                       {"witness_point", c.witness_point},
                       {"tolerance", c.tolerance},
                       {"note", c.note}});
  return json{{"checks", arr}, {"all_pass", rep.all_pass()}};
}

json json_of_levels(const std::vector<LevelRecord>& levels) {
  json arr = json::array();
  for (const auto& lv : levels) {
    json j{{"n", lv.n},
           {"M", lv.M},
           {"k_final", lv.k_final},
           {"forcing_scale", lv.forcing_scale},
           {"norm_W12", lv.norm_W12},
           {"norm_inf", lv.norm_inf},
           {"residual_sup", lv.residual_sup},
           {"certificate", lv.certificate},
           {"tail_sup", lv.tail_sup},
           {"k_levels", lv.trace.ks},
           {"drifts", lv.trace.drifts},
           {"fk_gaps", lv.trace.fk_gaps}};
    if (std::isfinite(lv.agreement)) j["agreement"] = lv.agreement;
    arr.push_back(j);
  }
  return arr;
}

void write_samples_csv(const std::string& path, const char* header, const ArrayX& t,
                       const ArrayX& u, const ArrayX& du) {
  std::string text(header);
  text += "\n";
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    text += format_number(t[i]);
    text += ",";
    text += format_number(u[i]);
    text += ",";
    text += format_number(du[i]);
    text += "\n";
  }
  write_text(path, text);
}

json manifest_skeleton(const RunConfig& cfg, const std::string& subcommand) {
  return json{{"tool", "homsolve"},
              {"version", kVersion},
              {"subcommand", subcommand},
              {"config_hash", config_hash(cfg.raw_text)},
              {"config_text", cfg.raw_text}};
}

std::string level_csv_name(double n) {
  std::string s = std::to_string(n);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  for (char& c : s)
    if (c == '.') c = 'p';
  return "level_n" + s + ".csv";
}

}  // namespace

RunResult run_validate(const RunConfig& cfg) {
  RunResult res;
  res.output_dir = effective_output_dir(cfg);
  ensure_dir(res.output_dir);
  const ProblemInstance inst = cfg.resolved_instance();
  const HypothesisReport rep =
      validate_hypotheses(inst, cfg.validate_radius, cfg.validate_points);
  json arr = json::array();
  for (const auto& c : rep.checks)
    arr.push_back(json{{"name", c.name},
                       {"pass", c.pass},
                       {"worst_value", c.worst_value},
                       {"worst_point", c.worst_point},
                       {"ties", c.ties},
                       {"detail", c.detail}});
  json j = manifest_skeleton(cfg, "validate");
  j["instance"] = inst.name;
  j["lambda"] = inst.lambda;
  j["report"] = json{{"checks", arr}, {"all_pass", rep.all_pass}};
  write_json(res.output_dir + "/hypothesis_report.json", j);
  res.exit_code = rep.all_pass ? kOk : kVerificationFailure;
  res.message = rep.all_pass ? "all hypotheses hold on the sampled grid"
                             : "hypothesis violation; see hypothesis_report.json";
  return res;
}

RunResult run_constants_report(const RunConfig& cfg) {
  RunResult res;
  res.output_dir = effective_output_dir(cfg);
  ensure_dir(res.output_dir);
  const ProblemInstance inst = cfg.resolved_instance();
  const ConstantsReport c = compute_constants(inst, cfg.solve_n, cfg.nonexistence_R,
                                              cfg.lstar_radius, cfg.strauss_k_ref);
  json j = manifest_skeleton(cfg, "constants-report");
  j["instance"] = inst.name;
  j["lambda"] = inst.lambda;
  j["constants"] = json_of_constants(c);
  write_json(res.output_dir + "/constants_report.json", j);
  res.message = "constants written";
  return res;
}

RunResult run_strauss_report(const RunConfig& cfg) {
  RunResult res;
  res.output_dir = effective_output_dir(cfg);
  ensure_dir(res.output_dir);
  const ProblemInstance inst = cfg.resolved_instance();
  std::string text = "k,uniform_error,lipschitz_estimate\n";
  for (long long k : cfg.strauss_ks) {
    StraussApproximant fk(inst.g, k, inst.theta);
    const double err =
        uniform_error(fk, inst.g, cfg.strauss_radius, cfg.strauss_samples);
    const double lip = lipschitz_estimate(fk, cfg.strauss_radius, cfg.strauss_samples);
    text +=
        std::to_string(k) + "," + format_number(err) + "," + format_number(lip) + "\n";
  }
  write_text(res.output_dir + "/strauss_report.csv", text);
  json j = manifest_skeleton(cfg, "strauss-report");
  j["instance"] = inst.name;
  write_json(res.output_dir + "/manifest.json", j);
  res.message = "strauss report written";
  return res;
}

RunResult run_solve(const RunConfig& cfg) {
  RunResult res;
  res.output_dir = effective_output_dir(cfg);
  ensure_dir(res.output_dir);
  const ProblemInstance inst = cfg.resolved_instance();
  const ConstantsReport consts = compute_constants(inst, cfg.solve_n, cfg.nonexistence_R,
                                                   cfg.lstar_radius, cfg.strauss_k_ref);
  if (inst.lambda > consts.Lambda_star && !cfg.allow_beyond_lambda_star)
    throw ConfigError("lambda exceeds Lambda*; pass --allow-beyond-lambda-star to probe");
  const int M = cfg.solve_M > 0 ? cfg.solve_M
                                : static_cast<int>(std::ceil(
                                      cfg.continuation.M_per_unit * cfg.solve_n));
  const EvenBasis basis = build_basis(cfg.solve_n, M);
  KTrace trace;
  const GalerkinSolution sol =
      solve_Pn(inst, consts, basis, cfg.continuation, nullptr, &trace);
  const VerificationReport ver = verify_interval_solution(inst, sol, consts, cfg.verify);

  write_samples_csv(res.output_dir + "/solution.csv", "t,u,du", sol.t, sol.u, sol.du);
  json j = manifest_skeleton(cfg, "solve");
  j["instance"] = inst.name;
  j["lambda"] = inst.lambda;
  j["n"] = sol.n;
  j["M"] = sol.M;
  j["k_final"] = sol.k;
  j["forcing_scale"] = sol.forcing_scale;
  j["norm_W12"] = sol.coeffs.norm_W12();
  j["residual_sup"] = sol.residual_sup;
  j["certificate"] = sol.certificate;
  j["k_levels"] = trace.ks;
  j["drifts"] = trace.drifts;
  j["fk_gaps"] = trace.fk_gaps;
  j["constants"] = json_of_constants(consts);
  j["verification"] = json_of_checks(ver);
  write_json(res.output_dir + "/manifest.json", j);
  write_json(res.output_dir + "/verification.json", json_of_checks(ver));
  res.exit_code = ver.all_pass() ? kOk : kVerificationFailure;
  res.message = ver.all_pass() ? "solution accepted"
                               : "verification failure; see " + res.output_dir +
                                     "/verification.json";
  return res;
}

RunResult run_homoclinic(const RunConfig& cfg) {
  RunResult res;
  res.output_dir = effective_output_dir(cfg);
  ensure_dir(res.output_dir);
  const ProblemInstance inst = cfg.resolved_instance();
  const ConstantsReport consts =
      compute_constants(inst, cfg.continuation.n_schedule.back(), cfg.nonexistence_R,
                        cfg.lstar_radius, cfg.strauss_k_ref);
  if (inst.lambda > consts.Lambda_star && !cfg.allow_beyond_lambda_star)
    throw ConfigError("lambda exceeds Lambda*; pass --allow-beyond-lambda-star to probe");

  const HomoclinicSolution sol = solve_homoclinic(inst, cfg.continuation);

  json j = manifest_skeleton(cfg, "homoclinic");
  j["instance"] = inst.name;
  j["lambda"] = inst.lambda;
  j["levels"] = json_of_levels(sol.levels);
  j["status"] = sol.status == PipelineStatus::Converged ? "converged" : "no-homoclinic";
  j["reason"] = sol.reason;
  j["constants"] = json_of_constants(consts);

  for (const auto& lv : sol.levels)
    write_samples_csv(res.output_dir + "/" + level_csv_name(lv.n), "t,u,du", lv.t,
                      lv.u, lv.du);

  if (sol.status != PipelineStatus::Converged) {
    write_json(res.output_dir + "/manifest.json", j);
    res.exit_code = kSolverStallExit;
    res.message = sol.reason;
    return res;
  }

  write_samples_csv(res.output_dir + "/merged.csv", "t,v,dv", sol.t, sol.v, sol.dv);
  // the verification constants are those of the final interval
  const ConstantsReport final_consts = compute_constants(
      inst, sol.n_final, cfg.nonexistence_R, cfg.lstar_radius, cfg.strauss_k_ref);
  const VerificationReport ver = verify_homoclinic(inst, sol, final_consts, cfg.verify);
  j["n_final"] = sol.n_final;
  j["tail_sup"] = sol.tail_sup;
  j["k_final"] = sol.k_final;
  j["forcing_scale"] = sol.forcing_scale;
  j["verification"] = json_of_checks(ver);
  write_json(res.output_dir + "/manifest.json", j);
  write_json(res.output_dir + "/verification.json", json_of_checks(ver));
  res.exit_code = ver.all_pass() ? kOk : kVerificationFailure;
  res.message = ver.all_pass() ? "homoclinic run accepted"
                               : "verification failure; see " + res.output_dir +
                                     "/verification.json";
  return res;
}

RunResult run_sweep(const RunConfig& cfg) {
  RunResult res;
  res.output_dir = effective_output_dir(cfg);
  ensure_dir(res.output_dir);
  const ProblemInstance inst = cfg.resolved_instance();
  const ConstantsReport consts = compute_constants(inst, cfg.solve_n, cfg.nonexistence_R,
                                                   cfg.lstar_radius, cfg.strauss_k_ref);
  std::vector<double> lambdas = cfg.sweep_lambdas;
  if (lambdas.empty()) {
    double lam = consts.Lambda_star;
    for (int j = 0; j <= cfg.sweep_halvings; ++j, lam *= 0.5) lambdas.push_back(lam);
  }
  if (!cfg.allow_beyond_lambda_star)
    for (double lam : lambdas)
      if (lam < 0.0 || lam > consts.Lambda_star * (1.0 + 1e-12))
        throw ConfigError("sweep lambda outside [0, Lambda*]");

  const std::vector<SweepRow> rows =
      lambda_sweep(inst, lambdas, cfg.solve_n, cfg.continuation);

  std::string text = "lambda,norm_W12,norm_inf,bound_rhs,sup_bound,bound_ok\n";
  for (const auto& row : rows) {
    text += format_number(row.lambda) + "," + format_number(row.norm_W12) + "," +
            format_number(row.norm_inf) + "," + format_number(row.bound_rhs) + "," +
            format_number(row.sup_bound) + "," + (row.bound_ok ? "1" : "0") + "\n";
  }
  write_text(res.output_dir + "/sweep.csv", text);
  json j = manifest_skeleton(cfg, "sweep");
  j["instance"] = inst.name;
  j["n"] = cfg.solve_n;
  j["lambdas"] = lambdas;
  j["constants"] = json_of_constants(consts);
  write_json(res.output_dir + "/manifest.json", j);
  res.message = "sweep written";
  return res;
}

RunResult run_nonexistence_probe(const RunConfig& cfg) {
  RunResult res;
  res.output_dir = effective_output_dir(cfg);
  ensure_dir(res.output_dir);
  ProblemInstance inst = cfg.resolved_instance();
  const ConstantsReport consts =
      compute_constants(inst, cfg.continuation.n_schedule.back(), cfg.nonexistence_R,
                        cfg.lstar_radius, cfg.strauss_k_ref);
  if (!(consts.lambda0 > 0.0) || !std::isfinite(consts.lambda0))
    throw NumericsError("threshold undefined");
  inst.lambda = cfg.probe_factor * consts.lambda0;

  const HomoclinicSolution sol = solve_homoclinic(inst, cfg.continuation);

  json j = manifest_skeleton(cfg, "nonexistence-probe");
  j["instance"] = inst.name;
  j["lambda0"] = consts.lambda0;
  j["probe_lambda"] = inst.lambda;
  j["constants"] = json_of_constants(consts);
  j["levels"] = json_of_levels(sol.levels);
  const bool no_solution = sol.status == PipelineStatus::NoHomoclinic;
  j["status"] = no_solution ? "no-homoclinic" : "converged";
  j["reason"] = sol.reason;
  j["consistent"] = no_solution;
  write_json(res.output_dir + "/manifest.json", j);
  if (no_solution) {
    res.exit_code = kOk;
    res.message = "no solution found above the nonexistence threshold, as predicted";
  } else {
    res.exit_code = kVerificationFailure;
    res.message = "a solution was produced above the nonexistence threshold";
  }
  return res;
}

}  // namespace homsolve
