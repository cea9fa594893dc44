#ifndef SL_EXPERIMENT_HPP
#define SL_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl/mcmc.hpp"

namespace sl {

// Everything needed to reproduce one paper experiment: the model, the
// observed-data source, the stage schedule and the proposal/likelihood knobs.
struct ExperimentConfig {
  std::string name;
  std::string model;
  std::uint64_t seed = 1;
  int replicates = 1;

  VectorXd true_params;                   // natural scale, for data generation
  std::optional<VectorXd> observed_summary;  // overrides data generation
  VectorXd theta0;                        // natural scale
  std::optional<std::vector<VectorXd>> theta0_list;  // per-replicate starts

  StageSchedule schedule;
  VectorXd c_init_sd;  // chain-scale random-walk standard deviations
  int haario_update_interval = 30;
  GuidedMode asl_mode = GuidedMode::gaussian;
  std::optional<double> student_nu;

  DensityKind density = DensityKind::unbiased;
  std::optional<double> shrink_gamma;
  std::optional<int> csl_blocks;

  std::optional<PriorSpec> prior;  // unset: the model's documented prior
};

// Parse + validate a JSON config; throws config_error with the field path.
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

// The model's documented prior by id.
PriorSpec default_prior(const std::string& model_id);

// Observed summary: configured vector, or one seeded simulation at
// true_params.
VectorXd observed_summary(const Model& model, const ExperimentConfig& cfg);

ChainConfig make_chain_config(const Model& model, const ExperimentConfig& cfg,
                              int replicate);

struct ExperimentResult {
  std::vector<ChainTrace> traces;
  std::string report;  // key-value text, one section per replicate
};

// Runs the replicate chains (seed mixed per replicate), writes
// trace_<i>.csv and report.txt under out_dir when out_dir is non-empty.
// scale divides the stage lengths (smoke profile).
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir = "",
                                int scale = 1);

}  // namespace sl

#endif
