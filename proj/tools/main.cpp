#include "homsolve/artifacts.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using homsolve::RunConfig;
using homsolve::RunResult;

int dispatch(const std::string& sub, const std::string& config_path,
             bool allow_beyond, const std::string& output_dir) {
  RunConfig cfg = homsolve::load_config(config_path);
  if (allow_beyond) cfg.allow_beyond_lambda_star = true;
  if (!output_dir.empty()) cfg.output_dir = output_dir;

  RunResult res;
  if (sub == "validate")
    res = homsolve::run_validate(cfg);
  else if (sub == "constants-report")
    res = homsolve::run_constants_report(cfg);
  else if (sub == "strauss-report")
    res = homsolve::run_strauss_report(cfg);
  else if (sub == "solve")
    res = homsolve::run_solve(cfg);
  else if (sub == "homoclinic")
    res = homsolve::run_homoclinic(cfg);
  else if (sub == "sweep")
    res = homsolve::run_sweep(cfg);
  else if (sub == "nonexistence-probe")
    res = homsolve::run_nonexistence_probe(cfg);
  else
    throw homsolve::ConfigError("unknown subcommand " + sub);

  std::cout << sub << ": " << res.message << "\n";
  std::cout << "artifacts: " << res.output_dir << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin continuation solver for an even homoclinic boundary value problem"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  bool allow_beyond = false;
  app.add_option("-c,--config", config_path, "run configuration file")->required();
  app.add_option("-o,--output", output_dir, "override output directory");
  app.add_flag("--allow-beyond-lambda-star", allow_beyond,
               "permit lambda above Lambda* (nonexistence probes)");

  const char* subs[] = {"validate", "constants-report", "strauss-report",
                        "solve",    "homoclinic",       "sweep",
                        "nonexistence-probe"};
  for (const char* s : subs) app.add_subcommand(s)->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    return dispatch(app.get_subcommands().front()->get_name(), config_path,
                    allow_beyond, output_dir);
  } catch (const homsolve::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return homsolve::kConfigError;
  } catch (const homsolve::SolverStall& e) {
    std::cerr << "solver stall: " << e.what() << "\n";
    return homsolve::kSolverStallExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return homsolve::kVerificationFailure;
  }
}
