#ifndef SL_MCMC_HPP
#define SL_MCMC_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sl/likelihood.hpp"
#include "sl/model.hpp"
#include "sl/prior.hpp"
#include "sl/proposals.hpp"

namespace sl {

enum class Stage : std::int8_t { burnin = 0, asl = 1, adaptive = 2 };

std::string stage_name(Stage s);

struct StageSchedule {
  int burnin = 0;             // K iterations, fixed-covariance random walk
  bool mcwm_in_burnin = true;
  int t_asl = 0;              // guided iterations
  int r_post = 0;             // adaptive iterations
  int m = 100;                // simulations per likelihood estimate
  std::optional<int> m_post;  // reduced M after the guided stage

  int total() const { return burnin + t_asl + r_post; }
};

struct ChainConfig {
  StageSchedule schedule;
  VectorXd theta0_chain;
  MatrixXd c_init;  // burnin random-walk covariance, chain scale
  int haario_update_interval = 30;
  double haario_epsilon = 1e-8;
  GuidedMode asl_mode = GuidedMode::gaussian;
  std::optional<double> student_nu;
  int asl_batch = 1;  // N: iterations between guided-proposal refreshes
  // Apply the exact independence-sampler Hastings ratio g(cur)/g(prop) in the
  // guided stage. Off by default: the stage is an initializer whose draws only
  // seed the adaptive stage, and the exact ratio vetoes the initial jump from
  // a tail start (the conditional covariance is orders of magnitude tighter
  // than the distance to the start, so log g(cur) ~ -1e4 and below).
  bool asl_hastings = false;
  bool bootstrap_on_rejection = true;
  DensityKind density = DensityKind::unbiased;
  std::optional<double> shrink_gamma;
  std::optional<int> csl_blocks;  // G; unset means plain (fresh-variate) BSL
  bool parallel = true;
};

struct ChainTrace {
  std::vector<VectorXd> theta_natural;
  std::vector<VectorXd> theta_chain;
  std::vector<double> loglik;
  std::vector<std::uint8_t> accepted;
  std::vector<Stage> stage;
  std::vector<int> refreshed_block;  // -1 outside correlated runs

  std::size_t size() const { return loglik.size(); }
  bool operator==(const ChainTrace&) const = default;
};

// One Metropolis-Hastings decision. estimate() is only called when the
// proposal has positive prior density; -inf estimates auto-reject.
struct MhStepResult {
  VectorXd theta;
  double loglik;
  bool accepted;
};

MhStepResult mh_step(
    const VectorXd& theta_cur, double loglik_cur, const VectorXd& theta_prop,
    const std::function<double(const VectorXd&)>& estimate,
    double proposal_log_ratio, const PriorSpec& prior, Rng& rng);

// Markov-chain-within-Metropolis variant: the current parameter's likelihood
// is re-estimated fresh alongside the proposal's (two estimator calls).
MhStepResult mcwm_step(
    const VectorXd& theta_cur, const VectorXd& theta_prop,
    const std::function<double(const VectorXd&)>& estimate,
    double proposal_log_ratio, const PriorSpec& prior, Rng& rng);

// Three-stage schedule: fixed-covariance burnin (optionally MCWM), guided
// independence-sampler stage, then adaptive random walk seeded from the
// guided draws.
ChainTrace run_chain(const Model& model, const VectorXd& s_obs,
                     const PriorSpec& prior, const ChainConfig& cfg,
                     std::uint64_t seed);

}  // namespace sl

#endif
