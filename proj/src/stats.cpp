#include "sl/stats.hpp"

#include <cmath>
#include <limits>

#include "sl/errors.hpp"

namespace sl {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void symmetrize(MatrixXd& a) { a = ((a + a.transpose()) * 0.5).eval(); }

// log c(k, v) with c(k,v) = 2^{-kv/2} pi^{-k(k-1)/4} / prod_i Gamma((v-i+1)/2)
double log_c(int k, int v) {
  double acc = -0.5 * k * v * std::log(2.0) -
               0.25 * k * (k - 1) * std::log(M_PI);
  for (int i = 1; i <= k; ++i) acc -= std::lgamma(0.5 * (v - i + 1));
  return acc;
}

// log|A| if A is PD (via LLT), -inf otherwise.
double logdet_pd(const MatrixXd& a) {
  Eigen::LLT<MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) return kNegInf;
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}
}  // namespace

void estimate_moments(const SummaryMatrix& summaries, VectorXd& mu_hat,
                      MatrixXd& sigma_hat) {
  const auto m = summaries.rows();
  if (m < 2) throw invalid_input("estimate_moments: need at least 2 rows");
  if (!summaries.allFinite())
    throw invalid_input("estimate_moments: non-finite summary entry");
  mu_hat = summaries.colwise().mean();
  MatrixXd centered = summaries.rowwise() - mu_hat.transpose();
  sigma_hat = (centered.transpose() * centered) / double(m - 1);
  symmetrize(sigma_hat);
}

bool repair_spd(const MatrixXd& sigma, MatrixXd& sigma_pd, double eps_rel) {
  if (sigma.rows() != sigma.cols() ||
      !sigma.isApprox(sigma.transpose(), 1e-12))
    throw invalid_input("repair_spd: matrix not symmetric");
  Eigen::LLT<MatrixXd> llt(sigma);
  if (llt.info() == Eigen::Success) {
    sigma_pd = sigma;
    return false;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sigma);
  VectorXd lam = es.eigenvalues();
  const double floor = eps_rel * std::max(lam.maxCoeff(), 1.0);
  lam = lam.cwiseMax(floor);
  sigma_pd = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  symmetrize(sigma_pd);
  return true;
}

MatrixXd shrink_covariance(const MatrixXd& sigma, double gamma) {
  const auto d = sigma.rows();
  for (Eigen::Index i = 0; i < d; ++i)
    if (!(sigma(i, i) > 0.0))
      throw degenerate_covariance("shrink_covariance: non-positive diagonal");
  // D^{1/2}[gamma*C + (1-gamma)*I]D^{1/2}: off-diagonals scale by gamma,
  // the diagonal is unchanged.
  MatrixXd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out(i, j) = (i == j) ? sigma(i, i) : gamma * sigma(i, j);
  symmetrize(out);
  return out;
}

double gaussian_logpdf(const VectorXd& s, const VectorXd& mu,
                       const MatrixXd& sigma) {
  Eigen::LLT<MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw degenerate_covariance("gaussian_logpdf: covariance not PD");
  const double logdet =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  VectorXd z = llt.matrixL().solve(s - mu);
  return -0.5 * (s.size() * std::log(2.0 * M_PI) + logdet + z.squaredNorm());
}

double ghurye_olkin_logdensity(const VectorXd& s, const VectorXd& mu_hat,
                               const MatrixXd& sigma_hat, int M) {
  const int d = int(s.size());
  if (M <= d + 3)
    throw invalid_input("ghurye_olkin_logdensity: requires M > d_s + 3");
  const MatrixXd a = double(M - 1) * sigma_hat;
  const double logdet_a = logdet_pd(a);
  if (logdet_a == kNegInf)
    return kNegInf;
  VectorXd r = s - mu_hat;
  MatrixXd psi_arg = a - (r * r.transpose()) / (1.0 - 1.0 / M);
  const double logdet_psi = logdet_pd((psi_arg + psi_arg.transpose()) * 0.5);
  if (logdet_psi == kNegInf) return kNegInf;
  return -0.5 * d * std::log(2.0 * M_PI) + log_c(d, M - 2) - log_c(d, M - 1) -
         0.5 * d * std::log(1.0 - 1.0 / M) - 0.5 * (M - d - 2) * logdet_a +
         0.5 * (M - d - 3) * logdet_psi;
}

void gaussian_conditional(const JointMoments& moments, const VectorXd& s_obs,
                          VectorXd& m_cond, MatrixXd& S_cond) {
  const int dt = moments.d_theta;
  const int ds = moments.d_s;
  VectorXd m_theta = moments.m.head(dt);
  VectorXd m_s = moments.m.tail(ds);
  MatrixXd S_t = moments.S.topLeftCorner(dt, dt);
  MatrixXd S_ts = moments.S.topRightCorner(dt, ds);
  MatrixXd S_s = moments.S.bottomRightCorner(ds, ds);

  MatrixXd S_s_pd;
  repair_spd((S_s + S_s.transpose()) * 0.5, S_s_pd);
  Eigen::LLT<MatrixXd> llt(S_s_pd);
  if (llt.info() != Eigen::Success)
    throw degenerate_covariance("gaussian_conditional: S_s not PD after repair");

  m_cond = m_theta + S_ts * llt.solve(s_obs - m_s);
  S_cond = S_t - S_ts * llt.solve(S_ts.transpose());
  symmetrize(S_cond);
  MatrixXd repaired;
  if (repair_spd(S_cond, repaired)) S_cond = repaired;
}

double student_logpdf(const VectorXd& x, const VectorXd& mu,
                      const MatrixXd& sigma, double nu) {
  const int d = int(x.size());
  Eigen::LLT<MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw degenerate_covariance("student_logpdf: scale matrix not PD");
  const double logdet =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  VectorXd z = llt.matrixL().solve(x - mu);
  const double q = z.squaredNorm();
  return std::lgamma(0.5 * (nu + d)) - std::lgamma(0.5 * nu) -
         0.5 * d * std::log(nu * M_PI) - 0.5 * logdet -
         0.5 * (nu + d) * std::log1p(q / nu);
}

}  // namespace sl
