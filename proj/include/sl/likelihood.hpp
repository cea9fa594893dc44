#ifndef SL_LIKELIHOOD_HPP
#define SL_LIKELIHOOD_HPP

#include <optional>

#include "sl/model.hpp"
#include "sl/stats.hpp"
#include "sl/variates.hpp"

namespace sl {

enum class DensityKind { plain_gaussian, unbiased };

struct LikelihoodConfig {
  int m = 100;                          // simulations per estimate
  DensityKind density = DensityKind::unbiased;
  std::optional<double> shrink_gamma;   // Warton shrinkage, off when unset
  bool parallel = true;                 // OpenMP over the M simulations
};

// Synthetic log-likelihood at a chain-scale parameter. The M simulations are
// independent given their variate slices; the OpenMP path pre-assigns
// variates per simulation index and reduces in index order, so it is
// bit-identical to the serial reference (see tests and tools/sl_bench).
class SyntheticLikelihood {
 public:
  SyntheticLikelihood(const Model& model, VectorXd observed_summary,
                      LikelihoodConfig cfg);

  // Variate-driven estimate: simulations j read store.normals(j)/uniforms(j).
  SLEstimate estimate(const VectorXd& theta_chain,
                      const VariateStore& store,
                      SummaryMatrix* summaries_out = nullptr) const;

  // Fresh-variate estimate (BSL): draws the variates from rng in simulation
  // index order, exactly as a full store fill would.
  SLEstimate estimate_fresh(const VectorXd& theta_chain, Rng& rng,
                            SummaryMatrix* summaries_out = nullptr) const;

  // Serial reference implementation, kept for testing the parallel kernel.
  SLEstimate estimate_serial(const VectorXd& theta_chain,
                             const VariateStore& store,
                             SummaryMatrix* summaries_out = nullptr) const;

  const LikelihoodConfig& config() const { return cfg_; }
  const VectorXd& observed_summary() const { return s_obs_; }
  const Model& model() const { return model_; }

 private:
  SLEstimate estimate_impl(const VectorXd& theta_chain,
                           const VariateStore* store, Rng* rng, bool parallel,
                           SummaryMatrix* summaries_out) const;
  SLEstimate finalize(SummaryMatrix& summaries, bool sim_failed) const;

  const Model& model_;
  VectorXd s_obs_;
  LikelihoodConfig cfg_;
};

}  // namespace sl

#endif
