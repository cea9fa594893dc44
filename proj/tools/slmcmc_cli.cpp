#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "sl/diagnostics.hpp"
#include "sl/experiment.hpp"
#include "sl/trace_io.hpp"

namespace {

int cmd_run(const std::string& config_path, std::uint64_t seed_override,
            bool has_seed, const std::string& out_dir, bool smoke) {
  sl::ExperimentConfig cfg = sl::load_experiment_config(config_path);
  if (has_seed) cfg.seed = seed_override;
  const sl::ExperimentResult res =
      sl::run_experiment(cfg, out_dir, smoke ? 10 : 1);
  std::cout << res.report;
  return 0;
}

int cmd_diagnose(const std::vector<std::string>& traces, int tail, int stride) {
  for (const auto& path : traces) {
    sl::ChainTrace trace = sl::read_trace_file(path);
    if (stride > 1) trace = sl::thin(trace, stride);
    const Eigen::MatrixXd draws = sl::natural_draws(trace, tail);
    std::cout << "[" << path << "]\n";
    std::cout << "rows = " << trace.size() << "\n";
    if (draws.rows() >= 100) {
      const sl::EssResult ess = sl::ess_min(draws);
      std::cout << "min_ess = " << ess.min_ess << "\n";
      for (Eigen::Index j = 0; j < draws.cols(); ++j) {
        const auto [lo, hi] = sl::hpd_interval(draws.col(j));
        std::cout << "theta_" << j << "_mean = " << draws.col(j).mean()
                  << "\n";
        std::cout << "theta_" << j << "_hpd95 = (" << lo << ", " << hi
                  << ")\n";
      }
    } else {
      std::cout << "note = fewer than 100 draws, diagnostics skipped\n";
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_simulate(const std::string& model_id, const std::vector<double>& params,
                 std::uint64_t seed) {
  auto model = sl::make_model(model_id);
  if (int(params.size()) != model->param_dim())
    throw sl::config_error("--params", "expected " +
                                           std::to_string(model->param_dim()) +
                                           " values");
  Eigen::VectorXd theta(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) theta(i) = params[i];
  sl::Rng rng(seed);
  const Eigen::VectorXd s = model->simulate_summary_stream(theta, rng);
  for (Eigen::Index i = 0; i < s.size(); ++i)
    std::cout << (i ? "," : "") << s(i);
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic-likelihood MCMC harness"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags usable after the subcommand

  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_dir;
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--threads", threads, "OpenMP thread count (0 = default)");
  app.add_option("--out-dir", out_dir, "Directory for traces and reports");

  auto* run = app.add_subcommand("run", "Run an experiment config");
  std::string config_path;
  bool smoke = false;
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_flag("--smoke", smoke, "1/10-length smoke profile");

  auto* diagnose = app.add_subcommand("diagnose", "Diagnostics from trace files");
  std::vector<std::string> trace_paths;
  int tail = 0, stride = 1;
  diagnose->add_option("traces", trace_paths, "Trace CSV files")->required();
  diagnose->add_option("--tail", tail, "Use only the last N rows");
  diagnose->add_option("--thin", stride, "Thinning stride");

  auto* simulate = app.add_subcommand("simulate", "One seeded summary simulation");
  std::string model_id;
  std::vector<double> params;
  simulate->add_option("model", model_id, "Model id")->required();
  simulate->add_option("--params", params, "Natural-scale parameters")
      ->required();

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (run->parsed())
      return cmd_run(config_path, seed, app.count("--seed") > 0, out_dir,
                     smoke);
    if (diagnose->parsed()) return cmd_diagnose(trace_paths, tail, stride);
    if (simulate->parsed()) return cmd_simulate(model_id, params, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
