#ifndef SL_PROPOSALS_HPP
#define SL_PROPOSALS_HPP

#include <optional>
#include <vector>

#include "sl/rng.hpp"
#include "sl/stats.hpp"

namespace sl {

// Symmetric square root of a PSD matrix (Cholesky when PD, eigen fallback).
MatrixXd psd_sqrt(const MatrixXd& c);

// theta + C^{1/2} z with z standard normal; symmetric in (theta, theta').
VectorXd random_walk_propose(const VectorXd& theta, const MatrixXd& c,
                             Rng& rng);

// ---------------------------------------------------------------------------
// Adaptive random walk covariance (burnin constant, then scaled empirical
// covariance of the full history plus a ridge, refreshed every
// update_interval iterations).

struct HaarioState {
  MatrixXd c_init;
  double epsilon = 1e-8;
  int update_interval = 30;
  int burnin = 0;  // iterations r <= burnin use c_init
  std::vector<VectorXd> history;

  // cache: covariance is recomputed only at update points
  MatrixXd cached;
  int cached_at = -1;
};

const MatrixXd& haario_covariance(HaarioState& state, int r);

class HaarioProposal {
 public:
  HaarioProposal(MatrixXd c_init, int burnin, int update_interval = 30,
                 double epsilon = 1e-8);

  // Seed the adaptation history (e.g. with guided-stage draws).
  void seed_history(const std::vector<VectorXd>& draws);

  VectorXd propose(const VectorXd& cur, Rng& rng);
  void observe(const VectorXd& current_theta);  // append after each iteration

  HaarioState& state() { return state_; }

 private:
  HaarioState state_;
  int r_ = 0;
};

// ---------------------------------------------------------------------------
// Guided independence sampler: proposal parameters are the conditional
// mean/covariance of theta given the observed summary, under joint Gaussian
// moments accumulated over the (theta, s_bar) history.

enum class GuidedMode { gaussian, student };

class GuidedProposal {
 public:
  GuidedProposal(int d_theta, VectorXd s_obs,
                 std::optional<double> student_nu = std::nullopt);

  // Append a pair and refresh the cached conditional (N = 1 schedule).
  void append(const VectorXd& theta, const VectorXd& s_bar);

  int size() const { return n_; }
  const VectorXd& conditional_mean() const;
  const MatrixXd& conditional_cov() const;
  // Largest eigenvalue of the theta-block covariance (degeneracy probe).
  double theta_cov_spread() const;

  VectorXd propose(Rng& rng, GuidedMode mode) const;
  // Deterministic variants used by tests: z (and the chi-squared variate in
  // student mode) are injected.
  VectorXd propose_with(const VectorXd& z) const;
  VectorXd propose_student_with(const VectorXd& z, double chi2) const;

  double log_density(const VectorXd& theta, GuidedMode mode) const;

  // Batch-recomputed moments over an explicit history (reference for the
  // streaming accumulator).
  static void batch_conditional(const std::vector<VectorXd>& thetas,
                                const std::vector<VectorXd>& s_bars,
                                const VectorXd& s_obs, VectorXd& m_cond,
                                MatrixXd& S_cond);

 private:
  void recompute_conditional();

  int d_theta_;
  int d_s_;
  VectorXd s_obs_;
  double nu_;

  // streaming joint moments over the pair history
  int n_ = 0;
  VectorXd mean_;
  MatrixXd comoment_;  // sum of centered outer products

  bool conditional_valid_ = false;
  VectorXd m_cond_;
  MatrixXd s_cond_;
  MatrixXd s_cond_sqrt_;
  double delta_ = 0.0;  // Mahalanobis discrepancy of s_obs under S_s
};

// Mean of an M-size bootstrap resample of the rows; the s_bar stored on a
// guided-proposal rejection.
VectorXd bootstrap_rejection_summary(const SummaryMatrix& last_accepted,
                                     Rng& rng);

}  // namespace sl

#endif
