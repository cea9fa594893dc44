#include "sl/mcmc.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "sl/errors.hpp"

namespace sl {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool mh_accept(double loglik_cur, double loglik_prop, double proposal_log_ratio,
               double logprior_cur, double logprior_prop, Rng& rng) {
  if (!(loglik_prop > kNegInf)) return false;
  const double log_alpha = (loglik_prop - loglik_cur) + proposal_log_ratio +
                           (logprior_prop - logprior_cur);
  if (log_alpha >= 0.0) return true;
  return std::log(draw_uniform(rng)) < log_alpha;
}
}  // namespace

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::burnin: return "burnin";
    case Stage::asl: return "asl";
    case Stage::adaptive: return "adaptive";
  }
  return "?";
}

MhStepResult mh_step(const VectorXd& theta_cur, double loglik_cur,
                     const VectorXd& theta_prop,
                     const std::function<double(const VectorXd&)>& estimate,
                     double proposal_log_ratio, const PriorSpec& prior,
                     Rng& rng) {
  const double lp_cur = prior.log_density_chain(theta_cur);
  const double lp_prop = prior.log_density_chain(theta_prop);
  if (!(lp_prop > kNegInf))
    return {theta_cur, loglik_cur, false};  // support guard, no simulation
  const double ll_prop = estimate(theta_prop);
  if (mh_accept(loglik_cur, ll_prop, proposal_log_ratio, lp_cur, lp_prop, rng))
    return {theta_prop, ll_prop, true};
  return {theta_cur, loglik_cur, false};
}

MhStepResult mcwm_step(const VectorXd& theta_cur, const VectorXd& theta_prop,
                       const std::function<double(const VectorXd&)>& estimate,
                       double proposal_log_ratio, const PriorSpec& prior,
                       Rng& rng) {
  const double lp_cur = prior.log_density_chain(theta_cur);
  const double lp_prop = prior.log_density_chain(theta_prop);
  if (!(lp_prop > kNegInf)) {
    const double ll_cur = estimate(theta_cur);  // still refreshed
    return {theta_cur, ll_cur, false};
  }
  const double ll_cur = estimate(theta_cur);
  const double ll_prop = estimate(theta_prop);
  if (mh_accept(ll_cur, ll_prop, proposal_log_ratio, lp_cur, lp_prop, rng))
    return {theta_prop, ll_prop, true};
  return {theta_cur, ll_cur, false};
}

namespace {

// Single-chain state machine for the three-stage schedule.
class ChainRunner {
 public:
  ChainRunner(const Model& model, const VectorXd& s_obs,
              const PriorSpec& prior, const ChainConfig& cfg,
              std::uint64_t seed)
      : model_(model), s_obs_(s_obs), prior_(prior), cfg_(cfg), rng_(seed) {
    validate();
    rebuild_estimator(cfg_.schedule.m);
    theta_ = model_.canonicalize(cfg_.theta0_chain);
    loglik_ = estimate_current();
  }

  ChainTrace run() {
    run_burnin();
    run_asl();
    run_adaptive();
    return std::move(trace_);
  }

 private:
  void validate() const {
    if (cfg_.csl_blocks) {
      if (!model_.supports_variates())
        throw config_error("likelihood.csl_blocks",
                           "model '" + model_.id() +
                               "' has no fixed variate budget");
      if (cfg_.schedule.mcwm_in_burnin && cfg_.schedule.burnin > 0)
        throw config_error("schedule.mcwm_in_burnin",
                           "MCWM is not combined with correlated likelihoods");
      if (*cfg_.csl_blocks < 1)
        throw config_error("likelihood.csl_blocks", "G >= 1 required");
    }
    if (cfg_.schedule.t_asl > 0 && cfg_.schedule.burnin < 2)
      throw config_error("schedule.t_asl",
                         "guided stage needs at least 2 burnin pairs");
    if (cfg_.theta0_chain.size() != prior_.dim())
      throw config_error("theta0", "dimension does not match prior");
  }

  void rebuild_estimator(int m) {
    LikelihoodConfig lc;
    lc.m = m;
    lc.density = cfg_.density;
    lc.shrink_gamma = cfg_.shrink_gamma;
    lc.parallel = cfg_.parallel;
    lik_ = std::make_unique<SyntheticLikelihood>(model_, s_obs_, lc);
    if (cfg_.csl_blocks) {
      store_ = VariateStore(m, model_.normals_per_sim(),
                            model_.uniforms_per_sim(),
                            std::min(*cfg_.csl_blocks, m));
      store_->fill_all(rng_);
    }
  }

  double estimate_current() {
    return cfg_.csl_blocks ? lik_->estimate(theta_, *store_, &last_summaries_)
                               .log_density
                           : lik_->estimate_fresh(theta_, rng_,
                                                  &last_summaries_)
                                 .log_density;
  }

  // One MH iteration given a proposed point; handles the correlated-store
  // bookkeeping and trace row.
  void do_step(const VectorXd& prop, double proposal_log_ratio, Stage stage,
               bool mcwm) {
    int refreshed = -1;
    SummaryMatrix prop_summaries;
    MhStepResult res;
    if (mcwm) {
      SummaryMatrix cur_summaries;
      bool estimating_cur = true;
      auto est = [&](const VectorXd& th) {
        SummaryMatrix& dst = estimating_cur ? cur_summaries : prop_summaries;
        estimating_cur = false;
        return lik_->estimate_fresh(th, rng_, &dst).log_density;
      };
      res = mcwm_step(theta_, prop, est, proposal_log_ratio, prior_, rng_);
      last_summaries_ = res.accepted ? prop_summaries : cur_summaries;
    } else if (cfg_.csl_blocks) {
      VariateStore proposed_store = *store_;
      auto est = [&](const VectorXd& th) {
        refreshed = proposed_store.refresh_block(rng_);
        return lik_->estimate(th, proposed_store, &prop_summaries)
            .log_density;
      };
      res = mh_step(theta_, loglik_, prop, est, proposal_log_ratio, prior_,
                    rng_);
      if (res.accepted) {
        *store_ = std::move(proposed_store);
        last_summaries_ = prop_summaries;
      }
    } else {
      auto est = [&](const VectorXd& th) {
        return lik_->estimate_fresh(th, rng_, &prop_summaries).log_density;
      };
      res = mh_step(theta_, loglik_, prop, est, proposal_log_ratio, prior_,
                    rng_);
      if (res.accepted) last_summaries_ = prop_summaries;
    }
    theta_ = res.theta;
    loglik_ = res.loglik;
    last_accepted_ = res.accepted;
    trace_.theta_chain.push_back(theta_);
    trace_.theta_natural.push_back(model_.to_natural(theta_));
    trace_.loglik.push_back(loglik_);
    trace_.accepted.push_back(res.accepted ? 1 : 0);
    trace_.stage.push_back(stage);
    trace_.refreshed_block.push_back(res.accepted ? refreshed : -1);
  }

  void run_burnin() {
    const int k = cfg_.schedule.burnin;
    const bool mcwm = cfg_.schedule.mcwm_in_burnin && !cfg_.csl_blocks;
    for (int r = 0; r < k; ++r) {
      VectorXd prop =
          model_.canonicalize(random_walk_propose(theta_, cfg_.c_init, rng_));
      do_step(prop, 0.0, Stage::burnin, mcwm);
      burnin_accepts_ += last_accepted_;
      burnin_pairs_.emplace_back(model_.to_natural(theta_),
                                 last_summaries_.colwise().mean().transpose());
    }
  }

  void run_asl() {
    const int t = cfg_.schedule.t_asl;
    if (t == 0) return;
    GuidedProposal guided(prior_.dim(), s_obs_, cfg_.student_nu);
    for (const auto& [th, sb] : burnin_pairs_) guided.append(th, sb);
    if (burnin_accepts_ == 0 && guided.theta_cov_spread() < 1e-12)
      throw chain_abort(
          "guided stage cannot start: no burnin acceptance and a degenerate "
          "pair history (theta covariance is numerically zero)");

    // batched appends: with N > 1 the fitted proposal is frozen between
    // refreshes
    std::vector<std::pair<VectorXd, VectorXd>> batch;
    for (int n = 0; n < t; ++n) {
      // The guided fit lives on natural parameters (the theta <-> summary
      // relation is closest to linear there); the proposal density picks up
      // the chain-scale Jacobian in the MH ratio.
      const VectorXd prop_natural = guided.propose(rng_, cfg_.asl_mode);
      VectorXd prop;
      bool in_range = true;
      try {
        prop = model_.canonicalize(model_.to_chain(prop_natural));
        in_range = prop.allFinite();
      } catch (const std::exception&) {
        in_range = false;
      }
      if (in_range) {
        // Until the first guided acceptance the stage is a greedy search:
        // from a burnin tail point the reverse density g(cur) is
        // astronomically small and the exact ratio would veto the initial
        // jump. The current likelihood is re-estimated each pre-jump
        // iteration (as in MCWM) so a lucky-high estimate at a sticky point
        // cannot block the search. Once the current state is itself an
        // accepted guided draw, the exact independence-sampler ratio
        // g(cur)/g(prop) applies.
        const bool settled = cfg_.asl_hastings || asl_accepted_;
        double lr = 0.0;
        if (settled)
          lr = guided.log_density(model_.to_natural(theta_), cfg_.asl_mode) +
               model_.log_jacobian_natural(theta_) -
               guided.log_density(prop_natural, cfg_.asl_mode) -
               model_.log_jacobian_natural(prop);
        do_step(prop, lr, Stage::asl, !settled && !cfg_.csl_blocks);
        asl_accepted_ = asl_accepted_ || last_accepted_;
      } else {
        // outside the natural parameter box: rejected without simulating
        last_accepted_ = false;
        trace_.theta_chain.push_back(theta_);
        trace_.theta_natural.push_back(model_.to_natural(theta_));
        trace_.loglik.push_back(loglik_);
        trace_.accepted.push_back(0);
        trace_.stage.push_back(Stage::asl);
        trace_.refreshed_block.push_back(-1);
      }
      VectorXd s_bar =
          (!last_accepted_ && cfg_.bootstrap_on_rejection)
              ? bootstrap_rejection_summary(last_summaries_, rng_)
              : VectorXd(last_summaries_.colwise().mean().transpose());
      batch.emplace_back(model_.to_natural(theta_), s_bar);
      if (int(batch.size()) >= cfg_.asl_batch || n + 1 == t) {
        for (const auto& [th, sb] : batch) guided.append(th, sb);
        batch.clear();
      }
      asl_draws_.push_back(theta_);
    }
  }

  void run_adaptive() {
    const int r_post = cfg_.schedule.r_post;
    if (r_post == 0) return;
    if (cfg_.schedule.m_post && *cfg_.schedule.m_post != cfg_.schedule.m) {
      rebuild_estimator(*cfg_.schedule.m_post);
      loglik_ = estimate_current();
    }
    HaarioProposal haario(cfg_.c_init, 0, cfg_.haario_update_interval,
                          cfg_.haario_epsilon);
    if (asl_draws_.size() >= 2) {
      haario.seed_history(asl_draws_);
    } else {
      // No guided stage to seed from: hold c_init for one update interval,
      // then adapt on the accumulating history.
      haario.state().burnin = cfg_.haario_update_interval;
      haario.seed_history({theta_});
    }
    for (int i = 0; i < r_post; ++i) {
      VectorXd prop = model_.canonicalize(haario.propose(theta_, rng_));
      do_step(prop, 0.0, Stage::adaptive, false);
      haario.observe(theta_);
    }
  }

  const Model& model_;
  const VectorXd& s_obs_;
  const PriorSpec& prior_;
  const ChainConfig& cfg_;
  Rng rng_;
  std::unique_ptr<SyntheticLikelihood> lik_;
  std::optional<VariateStore> store_;

  VectorXd theta_;
  double loglik_ = kNegInf;
  bool last_accepted_ = false;
  SummaryMatrix last_summaries_;
  int burnin_accepts_ = 0;
  bool asl_accepted_ = false;
  std::vector<std::pair<VectorXd, VectorXd>> burnin_pairs_;
  std::vector<VectorXd> asl_draws_;
  ChainTrace trace_;
};

}  // namespace

ChainTrace run_chain(const Model& model, const VectorXd& s_obs,
                     const PriorSpec& prior, const ChainConfig& cfg,
                     std::uint64_t seed) {
  return ChainRunner(model, s_obs, prior, cfg, seed).run();
}

}  // namespace sl
