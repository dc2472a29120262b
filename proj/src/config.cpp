#include "homsolve/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace homsolve {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: bad boolean value for " + key + ": '" + v + "'");
}

template <typename T, typename Conv>
std::vector<T> to_list(const std::string& key, const std::string& v, Conv conv) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(conv(key, item));
  }
  if (out.empty()) throw ConfigError("config: empty list for " + key);
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.raw_text = text;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "instance.A") cfg.A_kind = val;
    else if (key == "instance.a1") cfg.a1_kind = val;
    else if (key == "instance.g") cfg.g_kind = val;
    else if (key == "instance.q") cfg.q = to_double(key, val);
    else if (key == "instance.p") cfg.p = to_double(key, val);
    else if (key == "instance.theta") cfg.theta = to_double(key, val);
    else if (key == "instance.gamma") cfg.gamma = to_double(key, val);
    else if (key == "instance.lambda") cfg.lambda = to_double(key, val);
    else if (key == "instance.lambda_star_fraction")
      cfg.lambda_star_fraction = to_double(key, val);
    else if (key == "validate.radius") cfg.validate_radius = to_double(key, val);
    else if (key == "validate.points") cfg.validate_points = to_int(key, val);
    else if (key == "lstar.radius") cfg.lstar_radius = to_double(key, val);
    else if (key == "strauss.k_ref") cfg.strauss_k_ref = to_int(key, val);
    else if (key == "strauss.k_list")
      cfg.strauss_ks = to_list<long long>(key, val, to_int);
    else if (key == "strauss.radius") cfg.strauss_radius = to_double(key, val);
    else if (key == "strauss.samples") cfg.strauss_samples = to_int(key, val);
    else if (key == "probe.R") cfg.nonexistence_R = to_double(key, val);
    else if (key == "probe.factor") cfg.probe_factor = to_double(key, val);
    else if (key == "solve.n") cfg.solve_n = to_double(key, val);
    else if (key == "solve.M") cfg.solve_M = static_cast<int>(to_int(key, val));
    else if (key == "disc.M_per_unit")
      cfg.continuation.M_per_unit = to_double(key, val);
    else if (key == "disc.output_points_per_unit")
      cfg.continuation.output_points_per_unit = to_int(key, val);
    else if (key == "cont.k_drift_tol") cfg.continuation.drift_tol = to_double(key, val);
    else if (key == "cont.fk_gap_tol") cfg.continuation.fk_gap_tol = to_double(key, val);
    else if (key == "cont.k_cap_doublings")
      cfg.continuation.max_k_doublings = static_cast<int>(to_int(key, val));
    else if (key == "cont.k_start") cfg.continuation.k_start = to_int(key, val);
    else if (key == "cont.agree_tol") cfg.continuation.agree_tol = to_double(key, val);
    else if (key == "cont.tail_tol") cfg.continuation.tail_tol = to_double(key, val);
    else if (key == "cont.n_schedule")
      cfg.continuation.n_schedule = to_list<double>(key, val, to_double);
    else if (key == "tol.residual") cfg.continuation.residual_tol = to_double(key, val);
    else if (key == "cert.samples")
      cfg.continuation.certificate_samples = static_cast<int>(to_int(key, val));
    else if (key == "seed") cfg.continuation.seed = static_cast<unsigned long long>(to_int(key, val));
    else if (key == "threads") cfg.continuation.threads = static_cast<int>(to_int(key, val));
    else if (key == "sweep.lambdas")
      cfg.sweep_lambdas = to_list<double>(key, val, to_double);
    else if (key == "sweep.halvings") cfg.sweep_halvings = static_cast<int>(to_int(key, val));
    else if (key == "sweep.slack") cfg.continuation.sweep_slack = to_double(key, val);
    else if (key == "verify.positivity_margin_fraction")
      cfg.verify.positivity_margin_fraction = to_double(key, val);
    else if (key == "verify.interior_margin")
      cfg.verify.interior_margin = to_double(key, val);
    else if (key == "output.dir") cfg.output_dir = val;
    else if (key == "allow_beyond_lambda_star")
      cfg.allow_beyond_lambda_star = to_bool(key, val);
    else
      throw ConfigError("config: unknown key '" + key + "'");
  }

  // validation
  auto positive = [](const char* what, double v) {
    if (!(v > 0.0)) throw ConfigError(std::string("config: ") + what + " must be positive");
  };
  positive("tol.residual", cfg.continuation.residual_tol);
  positive("cont.k_drift_tol", cfg.continuation.drift_tol);
  positive("cont.fk_gap_tol", cfg.continuation.fk_gap_tol);
  positive("cont.agree_tol", cfg.continuation.agree_tol);
  positive("cont.tail_tol", cfg.continuation.tail_tol);
  positive("validate.radius", cfg.validate_radius);
  positive("lstar.radius", cfg.lstar_radius);
  positive("solve.n", cfg.solve_n);
  positive("disc.M_per_unit", cfg.continuation.M_per_unit);
  if (cfg.continuation.n_schedule.empty())
    throw ConfigError("config: cont.n_schedule must be nonempty");
  for (std::size_t i = 0; i + 1 < cfg.continuation.n_schedule.size(); ++i)
    if (!(cfg.continuation.n_schedule[i] < cfg.continuation.n_schedule[i + 1]))
      throw ConfigError("config: cont.n_schedule must be strictly increasing");
  for (std::size_t i = 0; i + 1 < cfg.strauss_ks.size(); ++i)
    if (!(cfg.strauss_ks[i] < cfg.strauss_ks[i + 1]))
      throw ConfigError("config: strauss.k_list must be strictly increasing");
  if (cfg.continuation.threads < 1)
    throw ConfigError("config: threads must be >= 1");
  if (cfg.lambda < 0.0) throw ConfigError("config: instance.lambda must be >= 0");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ProblemInstance RunConfig::instance() const {
  return make_instance(A_kind, a1_kind, g_kind, q, p, theta, lambda, gamma);
}

ProblemInstance RunConfig::resolved_instance() const {
  ProblemInstance inst = instance();
  if (lambda_star_fraction >= 0.0) {
    const ConstantsReport c = compute_constants(inst, solve_n, nonexistence_R,
                                                lstar_radius, strauss_k_ref);
    inst.lambda = lambda_star_fraction * c.Lambda_star;
  }
  return inst;
}

std::string config_hash(const std::string& text) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return std::string(buf);
}

}  // namespace homsolve
