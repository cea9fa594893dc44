#include "sl/likelihood.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sl/errors.hpp"

namespace sl {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

SyntheticLikelihood::SyntheticLikelihood(const Model& model,
                                         VectorXd observed_summary,
                                         LikelihoodConfig cfg)
    : model_(model), s_obs_(std::move(observed_summary)), cfg_(cfg) {
  if (cfg_.m < 2) throw invalid_input("SyntheticLikelihood: M >= 2 required");
  if (cfg_.density == DensityKind::unbiased &&
      cfg_.m <= model.summary_dim() + 3)
    throw config_error("likelihood.m",
                       "unbiased density requires M > d_s + 3");
}

SLEstimate SyntheticLikelihood::estimate(const VectorXd& theta_chain,
                                         const VariateStore& store,
                                         SummaryMatrix* summaries_out) const {
  return estimate_impl(theta_chain, &store, nullptr, cfg_.parallel,
                       summaries_out);
}

SLEstimate SyntheticLikelihood::estimate_serial(
    const VectorXd& theta_chain, const VariateStore& store,
    SummaryMatrix* summaries_out) const {
  return estimate_impl(theta_chain, &store, nullptr, false, summaries_out);
}

SLEstimate SyntheticLikelihood::estimate_fresh(
    const VectorXd& theta_chain, Rng& rng,
    SummaryMatrix* summaries_out) const {
  return estimate_impl(theta_chain, nullptr, &rng, cfg_.parallel,
                       summaries_out);
}

SLEstimate SyntheticLikelihood::estimate_impl(
    const VectorXd& theta_chain, const VariateStore* store, Rng* rng,
    bool parallel, SummaryMatrix* summaries_out) const {
  if (!model_.supports_variates() && !rng)
    throw invalid_input(
        "correlated (store-driven) estimation needs a variate interface, "
        "which model '" + model_.id() + "' does not provide");
  const int m = cfg_.m;
  const int ds = model_.summary_dim();
  const VectorXd theta_nat = model_.to_natural(theta_chain);
  SummaryMatrix summaries(m, ds);
  std::atomic<bool> failed{false};

  if (model_.supports_variates()) {
    VariateStore fresh;
    if (!store) {
      // BSL path: same drawing order as a full store fill.
      fresh = VariateStore(m, model_.normals_per_sim(),
                           model_.uniforms_per_sim(), 1);
      fresh.fill_all(*rng);
      store = &fresh;
    }
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < m; ++j) {
      try {
        summaries.row(j) = model_
                               .simulate_summary(theta_nat, store->normals(j),
                                                 store->uniforms(j))
                               .transpose();
      } catch (const std::exception&) {
        failed.store(true, std::memory_order_relaxed);
      }
    }
  } else {
    // Stream simulators: one seed per replicate derived from a single master
    // draw, so parallel and serial execution see identical streams.
    const std::uint64_t base = (*rng)();
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < m; ++j) {
      try {
        Rng sim_rng(mix_seed(base, std::uint64_t(j)));
        summaries.row(j) =
            model_.simulate_summary_stream(theta_nat, sim_rng).transpose();
      } catch (const std::exception&) {
        failed.store(true, std::memory_order_relaxed);
      }
    }
  }
  if (summaries_out) *summaries_out = summaries;
  return finalize(summaries, failed.load());
}

SLEstimate SyntheticLikelihood::finalize(SummaryMatrix& summaries,
                                         bool sim_failed) const {
  SLEstimate est;
  est.m_used = cfg_.m;
  if (sim_failed || !summaries.allFinite()) {
    est.mu_hat = VectorXd::Zero(model_.summary_dim());
    est.sigma_hat = MatrixXd::Zero(model_.summary_dim(), model_.summary_dim());
    est.log_density = kNegInf;
    return est;
  }
  estimate_moments(summaries, est.mu_hat, est.sigma_hat);
  if (cfg_.shrink_gamma) {
    if ((est.sigma_hat.diagonal().array() <= 0.0).any()) {
      est.log_density = kNegInf;
      return est;
    }
    est.sigma_hat = shrink_covariance(est.sigma_hat, *cfg_.shrink_gamma);
  }
  MatrixXd pd;
  est.repaired = repair_spd(est.sigma_hat, pd);
  est.sigma_hat = pd;
  if (cfg_.density == DensityKind::unbiased) {
    // Can still be -inf through the psi-argument positive-definiteness check.
    est.log_density =
        ghurye_olkin_logdensity(s_obs_, est.mu_hat, est.sigma_hat, cfg_.m);
  } else {
    est.log_density = gaussian_logpdf(s_obs_, est.mu_hat, est.sigma_hat);
  }
  return est;
}

}  // namespace sl
