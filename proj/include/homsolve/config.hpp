#pragma once

#include "homsolve/continuation.hpp"
#include "homsolve/problem.hpp"
#include "homsolve/verify.hpp"

#include <map>
#include <string>
#include <vector>

namespace homsolve {

/// Flat key-value run configuration (see configs/schema.txt for the key list).
struct RunConfig {
  // instance
  std::string A_kind = "arctan";
  std::string a1_kind = "gaussian";
  std::string g_kind = "signed_power";
  double q = 1.5;
  double p = 3.0;
  double theta = 3.0;
  double gamma = 0.5;
  double lambda = 0.01;
  double lambda_star_fraction = -1.0;  // >= 0: lambda = fraction * Lambda*

  // validation / constants
  double validate_radius = 20.0;
  Eigen::Index validate_points = 10000;
  double lstar_radius = 12.0;
  long long strauss_k_ref = 10;
  double nonexistence_R = 1.0;
  double probe_factor = 10.0;

  // discretization and solve
  double solve_n = 5.0;
  int solve_M = 0;  // 0 = ceil(M_per_unit * n)
  ContinuationOptions continuation;

  // sweep
  std::vector<double> sweep_lambdas;  // empty = {Lambda*/2^j : j = 0..6}
  int sweep_halvings = 6;

  // strauss report
  std::vector<long long> strauss_ks = {10, 100, 1000, 10000};
  double strauss_radius = 1.0;
  Eigen::Index strauss_samples = 20001;

  VerifyOptions verify;

  std::string output_dir = "runs/out";
  bool allow_beyond_lambda_star = false;

  std::string raw_text;  // original file contents, hashed into the manifest

  ProblemInstance instance() const;
  /// Resolves lambda_star_fraction against the instance's Lambda*.
  ProblemInstance resolved_instance() const;
};

/// Parses `key = value` lines ('#' comments, blank lines ignored). Unknown
/// keys and malformed values raise ConfigError; ranges are validated.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// FNV-1a hash of the raw config text, printed into the run manifest.
std::string config_hash(const std::string& text);

}  // namespace homsolve
