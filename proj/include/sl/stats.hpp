#ifndef SL_STATS_HPP
#define SL_STATS_HPP

#include <Eigen/Dense>

namespace sl {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Rows are replicate summaries, columns are summary components.
using SummaryMatrix = MatrixXd;

struct SLEstimate {
  VectorXd mu_hat;
  MatrixXd sigma_hat;   // as used in the density (after shrinkage/repair)
  double log_density = 0.0;
  int m_used = 0;
  bool repaired = false;
};

// Joint moments of the stacked (theta, s_bar) vector, partitioned at d_theta.
struct JointMoments {
  VectorXd m;   // length d_theta + d_s
  MatrixXd S;   // (d_theta + d_s)^2, symmetric
  int d_theta = 0;
  int d_s = 0;
};

// Column means and 1/(M-1) covariance of an M x d_s summary matrix.
// Throws invalid_input for M < 2 or non-finite entries.
void estimate_moments(const SummaryMatrix& summaries, VectorXd& mu_hat,
                      MatrixXd& sigma_hat);

// Make a symmetric matrix positive definite by clipping eigenvalues to
// eps_rel * max(lambda_max, 1). Returns true when a repair was applied;
// already-PD inputs (Cholesky succeeds) pass through unchanged.
bool repair_spd(const MatrixXd& sigma, MatrixXd& sigma_pd,
                double eps_rel = 1e-8);

// Warton-style convex shrinkage of the correlation matrix toward identity,
// rescaled by the marginal variances: D^{1/2} [gamma*C + (1-gamma)*I] D^{1/2}.
MatrixXd shrink_covariance(const MatrixXd& sigma, double gamma);

// Exact multivariate normal log-density via Cholesky.
double gaussian_logpdf(const VectorXd& s, const VectorXd& mu,
                       const MatrixXd& sigma);

// Log of the unbiased Gaussian density estimator built from (mu_hat,
// sigma_hat) estimated on M replicates. Returns -inf when the psi argument
// (M-1)*Sigma - (s-mu)(s-mu)'/(1-1/M) is not positive definite.
// Requires M > d_s + 3.
double ghurye_olkin_logdensity(const VectorXd& s, const VectorXd& mu_hat,
                               const MatrixXd& sigma_hat, int M);

// Conditional mean/covariance of the theta block given the s block observed
// at s_obs. S_cond is symmetrized and repaired if needed.
void gaussian_conditional(const JointMoments& moments, const VectorXd& s_obs,
                          VectorXd& m_cond, MatrixXd& S_cond);

// Multivariate t log-density with location mu, scale matrix sigma, nu dof.
double student_logpdf(const VectorXd& x, const VectorXd& mu,
                      const MatrixXd& sigma, double nu);

}  // namespace sl

#endif
