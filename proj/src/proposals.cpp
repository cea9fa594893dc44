#include "sl/proposals.hpp"

#include <cmath>

#include "sl/errors.hpp"

namespace sl {

MatrixXd psd_sqrt(const MatrixXd& c) {
  Eigen::LLT<MatrixXd> llt(c);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(c);
  VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal();
}

VectorXd random_walk_propose(const VectorXd& theta, const MatrixXd& c,
                             Rng& rng) {
  VectorXd z(theta.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = draw_normal(rng);
  return theta + psd_sqrt(c) * z;
}

// ---------------------------------------------------------------------------

const MatrixXd& haario_covariance(HaarioState& state, int r) {
  if (r < 1) throw invalid_input("haario_covariance: r >= 1 required");
  if (r <= state.burnin) return state.c_init;
  const auto n = state.history.size();
  if (n < 2)
    throw invalid_state("haario_covariance: history too short past burnin");
  const bool stale = state.cached_at < 0 ||
                     (r % state.update_interval == 0 && r != state.cached_at);
  if (stale) {
    const int d = int(state.history.front().size());
    VectorXd mean = VectorXd::Zero(d);
    for (const auto& x : state.history) mean += x;
    mean /= double(n);
    MatrixXd cov = MatrixXd::Zero(d, d);
    for (const auto& x : state.history) {
      VectorXd c = x - mean;
      cov += c * c.transpose();
    }
    cov /= double(n - 1);
    const double scale = 2.4 * 2.4 / double(d);
    state.cached = scale * cov + scale * state.epsilon * MatrixXd::Identity(d, d);
    state.cached = ((state.cached + state.cached.transpose()) * 0.5).eval();
    state.cached_at = r;
  }
  return state.cached;
}

HaarioProposal::HaarioProposal(MatrixXd c_init, int burnin,
                               int update_interval, double epsilon) {
  state_.c_init = std::move(c_init);
  state_.burnin = burnin;
  state_.update_interval = update_interval;
  state_.epsilon = epsilon;
}

void HaarioProposal::seed_history(const std::vector<VectorXd>& draws) {
  state_.history = draws;
  state_.cached_at = -1;
}

VectorXd HaarioProposal::propose(const VectorXd& cur, Rng& rng) {
  ++r_;
  return random_walk_propose(cur, haario_covariance(state_, r_), rng);
}

void HaarioProposal::observe(const VectorXd& current_theta) {
  state_.history.push_back(current_theta);
}

// ---------------------------------------------------------------------------

GuidedProposal::GuidedProposal(int d_theta, VectorXd s_obs,
                               std::optional<double> student_nu)
    : d_theta_(d_theta),
      d_s_(int(s_obs.size())),
      s_obs_(std::move(s_obs)),
      nu_(student_nu.value_or(5.0)) {
  const int d = d_theta_ + d_s_;
  mean_ = VectorXd::Zero(d);
  comoment_ = MatrixXd::Zero(d, d);
}

void GuidedProposal::append(const VectorXd& theta, const VectorXd& s_bar) {
  if (theta.size() != d_theta_ || s_bar.size() != d_s_)
    throw invalid_input("GuidedProposal::append: dimension mismatch");
  VectorXd x(d_theta_ + d_s_);
  x << theta, s_bar;
  // multivariate Welford update
  ++n_;
  VectorXd d1 = x - mean_;
  mean_ += d1 / double(n_);
  comoment_ += d1 * (x - mean_).transpose();
  comoment_ = ((comoment_ + comoment_.transpose()) * 0.5).eval();
  if (n_ >= 2) recompute_conditional();
}

void GuidedProposal::recompute_conditional() {
  JointMoments jm;
  jm.d_theta = d_theta_;
  jm.d_s = d_s_;
  jm.m = mean_;
  jm.S = comoment_ / double(n_ - 1);
  gaussian_conditional(jm, s_obs_, m_cond_, s_cond_);
  MatrixXd s_s;
  repair_spd(jm.S.bottomRightCorner(d_s_, d_s_), s_s);
  VectorXd r = s_obs_ - mean_.tail(d_s_);
  delta_ = r.dot(Eigen::LLT<MatrixXd>(s_s).solve(r));
  s_cond_sqrt_ = psd_sqrt(s_cond_);
  conditional_valid_ = true;
}

const VectorXd& GuidedProposal::conditional_mean() const {
  if (!conditional_valid_)
    throw invalid_state("GuidedProposal: need at least 2 pairs");
  return m_cond_;
}

const MatrixXd& GuidedProposal::conditional_cov() const {
  if (!conditional_valid_)
    throw invalid_state("GuidedProposal: need at least 2 pairs");
  return s_cond_;
}

double GuidedProposal::theta_cov_spread() const {
  if (n_ < 2) return 0.0;
  MatrixXd s_t = comoment_.topLeftCorner(d_theta_, d_theta_) / double(n_ - 1);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s_t);
  return es.eigenvalues().maxCoeff();
}

VectorXd GuidedProposal::propose(Rng& rng, GuidedMode mode) const {
  VectorXd z(d_theta_);
  for (int i = 0; i < d_theta_; ++i) z(i) = draw_normal(rng);
  if (mode == GuidedMode::gaussian) return propose_with(z);
  std::chi_squared_distribution<double> chi2(nu_ + d_s_);
  return propose_student_with(z, chi2(rng));
}

VectorXd GuidedProposal::propose_with(const VectorXd& z) const {
  if (!conditional_valid_)
    throw invalid_state("GuidedProposal: need at least 2 pairs");
  return m_cond_ + s_cond_sqrt_ * z;
}

VectorXd GuidedProposal::propose_student_with(const VectorXd& z,
                                              double chi2) const {
  if (!conditional_valid_)
    throw invalid_state("GuidedProposal: need at least 2 pairs");
  const double scale = std::sqrt((nu_ + delta_) / (nu_ + d_s_));
  return m_cond_ +
         (scale * s_cond_sqrt_ * z) / std::sqrt(chi2 / (nu_ + d_s_));
}

double GuidedProposal::log_density(const VectorXd& theta,
                                   GuidedMode mode) const {
  if (!conditional_valid_)
    throw invalid_state("GuidedProposal: need at least 2 pairs");
  if (mode == GuidedMode::gaussian)
    return gaussian_logpdf(theta, m_cond_, s_cond_);
  const double mult = (nu_ + delta_) / (nu_ + d_s_);
  return student_logpdf(theta, m_cond_, mult * s_cond_, nu_ + d_s_);
}

void GuidedProposal::batch_conditional(const std::vector<VectorXd>& thetas,
                                       const std::vector<VectorXd>& s_bars,
                                       const VectorXd& s_obs, VectorXd& m_cond,
                                       MatrixXd& S_cond) {
  const int n = int(thetas.size());
  const int dt = int(thetas.front().size());
  const int ds = int(s_bars.front().size());
  MatrixXd x(n, dt + ds);
  for (int i = 0; i < n; ++i) x.row(i) << thetas[i].transpose(),
      s_bars[i].transpose();
  JointMoments jm;
  jm.d_theta = dt;
  jm.d_s = ds;
  VectorXd mu;
  MatrixXd cov;
  estimate_moments(x, mu, cov);
  jm.m = mu;
  jm.S = cov;
  gaussian_conditional(jm, s_obs, m_cond, S_cond);
}

VectorXd bootstrap_rejection_summary(const SummaryMatrix& last_accepted,
                                     Rng& rng) {
  const int m = int(last_accepted.rows());
  if (m < 1) throw invalid_input("bootstrap_rejection_summary: empty matrix");
  std::uniform_int_distribution<int> pick(0, m - 1);
  VectorXd acc = VectorXd::Zero(last_accepted.cols());
  for (int i = 0; i < m; ++i) acc += last_accepted.row(pick(rng)).transpose();
  return acc / double(m);
}

}  // namespace sl
