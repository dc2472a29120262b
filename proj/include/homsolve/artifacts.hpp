#pragma once

#include "homsolve/config.hpp"
#include "homsolve/verify.hpp"

#include <string>

namespace homsolve {

inline constexpr const char* kVersion = "0.1.0";

/// Fixed 17-significant-digit decimal formatting used in every CSV cell, so
/// that repeated single-threaded runs are byte-identical.
std::string format_number(double v);

/// Exit codes shared by the library runners and the CLI:
/// 0 ok, 1 verification failure, 2 config error, 3 solver stall.
enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kConfigError = 2, kSolverStallExit = 3 };

struct RunResult {
  int exit_code = kOk;
  std::string message;
  std::string output_dir;
};

RunResult run_validate(const RunConfig& cfg);
RunResult run_constants_report(const RunConfig& cfg);
RunResult run_strauss_report(const RunConfig& cfg);
RunResult run_solve(const RunConfig& cfg);
RunResult run_homoclinic(const RunConfig& cfg);
RunResult run_sweep(const RunConfig& cfg);
RunResult run_nonexistence_probe(const RunConfig& cfg);

/// Output directory after the HOMSOLVE_OUTPUT_DIR override.
std::string effective_output_dir(const RunConfig& cfg);

}  // namespace homsolve
