#ifndef SL_SUMMARIES_HPP
#define SL_SUMMARIES_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sl {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;
using Eigen::Matrix2d;

// Empirical quantile, fixed convention: linear interpolation between order
// statistics at plotting positions (i - 0.5)/n, clamped at the extremes.
double empirical_quantile(std::span<const double> data, double p);

// Same, but `sorted` must already be ascending (no copy/sort).
double sorted_quantile(std::span<const double> sorted, double p);

// (mean, variance with n-1 divisor, skewness m3/m2^{3/2}, kurtosis m4/m2^2)
// with central moments using 1/n; zero variance makes skewness/kurtosis 0.
struct MomentBlock {
  double mean;
  double variance;
  double skewness;
  double kurtosis;
};
MomentBlock moment_block(std::span<const double> series);

// (P50, IQR, octile skewness, octile kurtosis); throws degenerate_summary on
// zero IQR.
VectorXd gk_summaries(std::span<const double> data);

// Moment blocks of y, diff(y) and (y_i+1)/(y_{i-1}+1), concatenated.
VectorXd boombust_summaries(std::span<const double> y);

// McCulloch-style quantile statistics (S_alpha, S_beta, S_gamma, S_delta).
VectorXd mcculloch_summaries(std::span<const double> y, double gamma_true);

// EM-fitted component means with known covariances and equal weights, mean
// pairs sorted on the first coordinate (ties on the second). `converged`
// reports whether the mean movement dropped below tol within max_iter.
VectorXd mixture_summaries(const MatrixXd& points, const Matrix2d& sigma1,
                           const Matrix2d& sigma2, bool* converged = nullptr,
                           int max_iter = 200, double tol = 1e-8);

// Identity on the 20 distance moduli.
VectorXd supernova_summaries(const VectorXd& mu);

}  // namespace sl

#endif
