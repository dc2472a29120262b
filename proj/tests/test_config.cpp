#include <doctest.h>

#include "homsolve/config.hpp"

using namespace homsolve;

TEST_CASE("defaults survive an empty config") {
  const RunConfig cfg = parse_config_text("");
  CHECK(cfg.A_kind == "arctan");
  CHECK(cfg.lambda == 0.01);
  CHECK(cfg.continuation.n_schedule == std::vector<double>{4.0, 8.0, 16.0, 32.0});
  CHECK(cfg.continuation.threads == 1);
}

TEST_CASE("keys, comments and lists parse") {
  const RunConfig cfg = parse_config_text(
      "# a comment\n"
      "instance.lambda = 0.005   # trailing comment\n"
      "cont.n_schedule = 2, 4, 8\n"
      "strauss.k_list = 10,100\n"
      "threads = 2\n"
      "allow_beyond_lambda_star = true\n");
  CHECK(cfg.lambda == 0.005);
  CHECK(cfg.continuation.n_schedule == std::vector<double>{2.0, 4.0, 8.0});
  CHECK(cfg.strauss_ks == std::vector<long long>{10, 100});
  CHECK(cfg.continuation.threads == 2);
  CHECK(cfg.allow_beyond_lambda_star);
}

TEST_CASE("malformed configs are rejected with ConfigError") {
  CHECK_THROWS_AS(parse_config_text("tol.residual = -1e-10\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("no.such.key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("instance.lambda = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("cont.n_schedule = 4, 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just a line\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("threads = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("instance.lambda = -0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("instance.A = cubic\n").instance(), ConfigError);
}

TEST_CASE("lambda_star_fraction resolves against the instance threshold") {
  RunConfig cfg = parse_config_text("instance.lambda_star_fraction = 0.5\n");
  const ProblemInstance inst = cfg.resolved_instance();
  CHECK(inst.lambda == doctest::Approx(0.5 * 0.017730373932684138).epsilon(1e-8));
}

TEST_CASE("config hash is stable and text-sensitive") {
  const std::string a = "instance.lambda = 0.01\n";
  CHECK(config_hash(a) == config_hash(a));
  CHECK(config_hash(a) != config_hash(a + " "));
  CHECK(config_hash(a).size() == 16);
}
