#include "sl/summaries.hpp"

#include <algorithm>
#include <cmath>

#include "sl/errors.hpp"

namespace sl {

double sorted_quantile(std::span<const double> sorted, double p) {
  const auto n = sorted.size();
  if (n == 0) throw invalid_input("sorted_quantile: empty data");
  if (p < 0.0 || p > 1.0) throw invalid_input("sorted_quantile: p outside [0,1]");
  const double h = p * double(n) - 0.5;
  if (h <= 0.0) return sorted.front();
  if (h >= double(n - 1)) return sorted.back();
  const auto i = std::size_t(h);
  const double frac = h - double(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

double empirical_quantile(std::span<const double> data, double p) {
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  return sorted_quantile(x, p);
}

MomentBlock moment_block(std::span<const double> series) {
  const auto n = series.size();
  if (n < 2) throw invalid_input("moment_block: need at least 2 values");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= double(n);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : series) {
    const double c = v - mean;
    m2 += c * c;
    m3 += c * c * c;
    m4 += c * c * c * c;
  }
  const double variance = m2 / double(n - 1);
  m2 /= double(n);
  m3 /= double(n);
  m4 /= double(n);
  MomentBlock b{mean, variance, 0.0, 0.0};
  if (m2 > 0.0) {
    b.skewness = m3 / std::pow(m2, 1.5);
    b.kurtosis = m4 / (m2 * m2);
  }
  return b;
}

VectorXd gk_summaries(std::span<const double> data) {
  if (data.size() < 8) throw invalid_input("gk_summaries: need n >= 8");
  std::vector<double> x(data.begin(), data.end());
  std::sort(x.begin(), x.end());
  const double p125 = sorted_quantile(x, 0.125);
  const double p25 = sorted_quantile(x, 0.25);
  const double p375 = sorted_quantile(x, 0.375);
  const double p50 = sorted_quantile(x, 0.50);
  const double p625 = sorted_quantile(x, 0.625);
  const double p75 = sorted_quantile(x, 0.75);
  const double p875 = sorted_quantile(x, 0.875);
  const double s_b = p75 - p25;
  if (s_b == 0.0) throw degenerate_summary("gk_summaries: zero IQR");
  VectorXd s(4);
  s << p50, s_b, (p75 + p25 - 2.0 * p50) / s_b,
      (p875 - p625 + p375 - p125) / s_b;
  return s;
}

VectorXd boombust_summaries(std::span<const double> y) {
  const auto n = y.size();
  if (n < 3) throw invalid_input("boombust_summaries: need length >= 3");
  std::vector<double> diff(n - 1), ratio(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    diff[i - 1] = y[i] - y[i - 1];
    ratio[i - 1] = (y[i] + 1.0) / (y[i - 1] + 1.0);
  }
  VectorXd s(12);
  int k = 0;
  for (const MomentBlock& b :
       {moment_block(y), moment_block(diff), moment_block(ratio)}) {
    s(k++) = b.mean;
    s(k++) = b.variance;
    s(k++) = b.skewness;
    s(k++) = b.kurtosis;
  }
  return s;
}

VectorXd mcculloch_summaries(std::span<const double> y, double gamma_true) {
  if (y.size() < 20) throw invalid_input("mcculloch_summaries: need n >= 20");
  std::vector<double> x(y.begin(), y.end());
  std::sort(x.begin(), x.end());
  const double q05 = sorted_quantile(x, 0.05);
  const double q25 = sorted_quantile(x, 0.25);
  const double q50 = sorted_quantile(x, 0.50);
  const double q75 = sorted_quantile(x, 0.75);
  const double q95 = sorted_quantile(x, 0.95);
  const double iqr = q75 - q25;
  const double spread = q95 - q05;
  if (iqr == 0.0 || spread == 0.0)
    throw degenerate_summary("mcculloch_summaries: zero quantile spread");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= double(y.size());
  VectorXd s(4);
  s << spread / iqr, (q95 + q05 - 2.0 * q50) / spread, iqr / gamma_true, mean;
  return s;
}

namespace {
// log N(x; mu, Sigma) for fixed 2x2 Sigma, precomputed inverse/logdet.
struct Gauss2 {
  Matrix2d inv;
  double log_norm;
  explicit Gauss2(const Matrix2d& sigma) {
    const double det = sigma.determinant();
    if (!(det > 0.0))
      throw invalid_input("mixture_summaries: singular component covariance");
    inv = sigma.inverse();
    log_norm = -std::log(2.0 * M_PI) - 0.5 * std::log(det);
  }
  double logpdf(const Vector2d& c) const {
    return log_norm - 0.5 * c.dot(inv * c);
  }
};
}  // namespace

VectorXd mixture_summaries(const MatrixXd& points, const Matrix2d& sigma1,
                           const Matrix2d& sigma2, bool* converged,
                           int max_iter, double tol) {
  const int n = int(points.rows());
  if (n < 10 || points.cols() != 2)
    throw invalid_input("mixture_summaries: need an n x 2 matrix, n >= 10");
  const Gauss2 g1(sigma1), g2(sigma2);

  // Deterministic spread init: the point farthest from the centroid, then
  // the point farthest from that one (linear-time diameter surrogate).
  const Vector2d centroid = points.colwise().mean().transpose();
  auto farthest_from = [&](const Vector2d& p) {
    int best = 0;
    double best_d = -1.0;
    for (int i = 0; i < n; ++i) {
      const double d = (Vector2d(points.row(i).transpose()) - p).squaredNorm();
      if (d > best_d) {
        best_d = d;
        best = i;
      }
    }
    return Vector2d(points.row(best).transpose());
  };
  Vector2d mu1 = farthest_from(centroid);
  Vector2d mu2 = farthest_from(mu1);

  bool ok = false;
  for (int it = 0; it < max_iter; ++it) {
    Vector2d acc1 = Vector2d::Zero(), acc2 = Vector2d::Zero();
    double w1 = 0.0, w2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const Vector2d x = points.row(i).transpose();
      const double l1 = g1.logpdf(x - mu1);
      const double l2 = g2.logpdf(x - mu2);
      const double r1 = 1.0 / (1.0 + std::exp(l2 - l1));
      w1 += r1;
      w2 += 1.0 - r1;
      acc1 += r1 * x;
      acc2 += (1.0 - r1) * x;
    }
    const Vector2d new1 = w1 > 0.0 ? Vector2d(acc1 / w1) : mu1;
    const Vector2d new2 = w2 > 0.0 ? Vector2d(acc2 / w2) : mu2;
    const double move = std::max((new1 - mu1).norm(), (new2 - mu2).norm());
    mu1 = new1;
    mu2 = new2;
    if (move < tol) {
      ok = true;
      break;
    }
  }
  if (converged) *converged = ok;

  if (mu2(0) < mu1(0) || (mu2(0) == mu1(0) && mu2(1) < mu1(1)))
    std::swap(mu1, mu2);
  VectorXd s(4);
  s << mu1(0), mu1(1), mu2(0), mu2(1);
  return s;
}

VectorXd supernova_summaries(const VectorXd& mu) {
  if (mu.size() != 20)
    throw invalid_input("supernova_summaries: expected a 20-vector");
  return mu;
}

}  // namespace sl
