#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <string>

#include "sl/errors.hpp"
#include "sl/experiment.hpp"

using namespace sl;

namespace {
// Minimal valid gk config; tests mutate single fields off this baseline.
std::string base_json() {
  return R"({
    "name": "gk-test",
    "model": "gk",
    "seed": 11,
    "true_params": [3.0, 1.0, 2.0, 0.5],
    "theta0": [3.0, 1.0, 2.0, 0.5],
    "schedule": {"burnin": 20, "t_asl": 3, "r_post": 5, "m": 100},
    "proposal": {"c_init_sd": [0.025, 0.025, 0.025, 0.025]},
    "likelihood": {}
  })";
}

void expect_field_error(const std::string& json_text,
                        const std::string& field) {
  try {
    parse_experiment_config(json_text);
    FAIL("expected config_error for field " << field);
  } catch (const config_error& e) {
    CHECK(e.field == field);
  }
}

std::string replace_once(std::string text, const std::string& from,
                         const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}
}  // namespace

TEST_CASE("a valid config parses into the expected fields") {
  const ExperimentConfig cfg = parse_experiment_config(base_json());
  CHECK(cfg.model == "gk");
  CHECK(cfg.seed == 11);
  CHECK(cfg.replicates == 1);
  CHECK(cfg.schedule.burnin == 20);
  CHECK(cfg.schedule.m == 100);
  CHECK(cfg.density == DensityKind::unbiased);
  CHECK_FALSE(cfg.csl_blocks);
  CHECK_FALSE(cfg.prior);
  CHECK(cfg.c_init_sd.size() == 4);
}

TEST_CASE("validation errors name the offending field") {
  expect_field_error("{not json", "<root>");
  expect_field_error(replace_once(base_json(), "\"model\": \"gk\"",
                                  "\"model\": \"nope\""),
                     "model");
  expect_field_error(replace_once(base_json(), "\"seed\": 11,", ""), "seed");
  expect_field_error(replace_once(base_json(), "[3.0, 1.0, 2.0, 0.5]",
                                  "[3.0, 1.0]"),
                     "true_params");
  expect_field_error(replace_once(base_json(), "\"burnin\": 20", "\"burnin\": -1"),
                     "schedule");
  expect_field_error(replace_once(base_json(), "\"m\": 100", "\"m\": 1"),
                     "schedule.m");
  expect_field_error(replace_once(base_json(), "[0.025, 0.025, 0.025, 0.025]",
                                  "[0.025]"),
                     "proposal.c_init_sd");
  expect_field_error(replace_once(base_json(), "\"likelihood\": {}",
                                  "\"likelihood\": {\"shrink_gamma\": 1.5}"),
                     "likelihood.shrink_gamma");
  expect_field_error(replace_once(base_json(), "\"likelihood\": {}",
                                  "\"likelihood\": {\"density\": \"exotic\"}"),
                     "likelihood.density");
}

TEST_CASE("correlated blocks are rejected for stream-driven models") {
  std::string text = replace_once(base_json(), "\"model\": \"gk\"",
                                  "\"model\": \"boombust\"");
  text = replace_once(text, "[3.0, 1.0, 2.0, 0.5]", "[0.4, 50.0, 0.09, 0.05]");
  text = replace_once(text, "[3.0, 1.0, 2.0, 0.5]", "[0.4, 50.0, 0.09, 0.05]");
  text = replace_once(text, "\"likelihood\": {}",
                      "\"likelihood\": {\"csl_blocks\": 10}");
  expect_field_error(text, "likelihood.csl_blocks");
}

TEST_CASE("custom priors parse and must match the dimension") {
  std::string text = replace_once(
      base_json(), "\"likelihood\": {}",
      R"("likelihood": {},
          "prior": [
            {"kind": "uniform", "a": -30, "b": 30, "transform": "log"},
            {"kind": "uniform", "a": 0, "b": 30, "transform": "log"},
            {"kind": "uniform", "a": 0, "b": 30, "transform": "log"},
            {"kind": "uniform", "a": 0, "b": 30, "transform": "log"}
          ])");
  const ExperimentConfig cfg = parse_experiment_config(text);
  REQUIRE(cfg.prior);
  CHECK(cfg.prior->dim() == 4);
  CHECK(cfg.prior->params[0].transform == PriorMarginal::Transform::log_scale);

  expect_field_error(replace_once(text, "\"kind\": \"uniform\", \"a\": -30",
                                  "\"kind\": \"cauchy\", \"a\": -30"),
                     "prior[0].kind");
}

TEST_CASE("theta0_list cycles across replicates") {
  std::string text = replace_once(
      base_json(), "\"theta0\": [3.0, 1.0, 2.0, 0.5]",
      R"("theta0_list": [[3.0, 1.0, 2.0, 0.5], [2.0, 2.0, 1.0, 0.3]])");
  const ExperimentConfig cfg = parse_experiment_config(text);
  REQUIRE(cfg.theta0_list);
  auto model = make_model("gk");
  const ChainConfig c0 = make_chain_config(*model, cfg, 0);
  const ChainConfig c1 = make_chain_config(*model, cfg, 1);
  const ChainConfig c2 = make_chain_config(*model, cfg, 2);
  CHECK((c0.theta0_chain - c2.theta0_chain).cwiseAbs().maxCoeff() == 0.0);
  CHECK((c0.theta0_chain - c1.theta0_chain).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("run_experiment is deterministic and writes artifacts") {
  const ExperimentConfig cfg = parse_experiment_config(base_json());
  const std::string dir = "experiment_test_out";
  const ExperimentResult a = run_experiment(cfg, dir);
  const ExperimentResult b = run_experiment(cfg);
  REQUIRE(a.traces.size() == 1);
  CHECK(a.traces[0].size() == 28);  // 20 + 3 + 5
  CHECK(a.traces[0] == b.traces[0]);
  CHECK(a.report == b.report);
  CHECK(a.report.find("acceptance_burnin") != std::string::npos);

  namespace fs = std::filesystem;
  CHECK(fs::exists(dir + "/trace_0.csv"));
  CHECK(fs::exists(dir + "/report.txt"));
  fs::remove_all(dir);
}

TEST_CASE("replicates use distinct seeds but a shared observed summary") {
  std::string text = replace_once(base_json(), "\"seed\": 11,",
                                  "\"seed\": 11, \"replicates\": 2,");
  const ExperimentConfig cfg = parse_experiment_config(text);
  const ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.traces.size() == 2);
  CHECK(res.traces[0].loglik != res.traces[1].loglik);
}

TEST_CASE("smoke scaling shortens the stages but keeps a viable burnin") {
  const ExperimentConfig cfg = parse_experiment_config(base_json());
  const ExperimentResult res = run_experiment(cfg, "", 10);
  // burnin 20 -> 2, t_asl 3 -> 0, r_post 5 -> 0
  CHECK(res.traces[0].size() == 2);
}
