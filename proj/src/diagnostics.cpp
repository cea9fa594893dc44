#include "sl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sl/errors.hpp"

namespace sl {

namespace {
// tau = -1 + 2 * sum of initial positive paired autocorrelations.
double geyer_tau(const VectorXd& x) {
  const auto n = x.size();
  const double mean = x.mean();
  const VectorXd c = x.array() - mean;
  const double gamma0 = c.squaredNorm() / double(n);
  if (gamma0 <= 0.0) return -1.0;  // constant column sentinel
  auto rho = [&](Eigen::Index k) {
    return c.head(n - k).dot(c.tail(n - k)) / double(n) / gamma0;
  };
  double tau = -1.0;
  for (Eigen::Index m = 0; 2 * m + 1 < n; ++m) {
    const double pair = rho(2 * m) + rho(2 * m + 1);
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
  }
  return tau;
}
}  // namespace

EssResult ess_min(const MatrixXd& draws) {
  if (draws.rows() < 100)
    throw invalid_input("ess_min: need at least 100 draws");
  EssResult r;
  r.per_param.resize(draws.cols());
  for (Eigen::Index j = 0; j < draws.cols(); ++j) {
    const double tau = geyer_tau(draws.col(j));
    if (tau < 0.0) {
      r.per_param(j) = 1.0;
      r.degenerate = true;
    } else {
      r.per_param(j) = double(draws.rows()) / std::max(tau, 1e-12);
    }
  }
  r.min_ess = r.per_param.minCoeff();
  return r;
}

std::pair<double, double> hpd_interval(const VectorXd& samples, double level) {
  const auto n = samples.size();
  if (n < 100) throw invalid_input("hpd_interval: need at least 100 samples");
  if (!(level > 0.0 && level <= 1.0))
    throw invalid_input("hpd_interval: level outside (0,1]");
  std::vector<double> x(samples.data(), samples.data() + n);
  std::sort(x.begin(), x.end());
  const auto k = std::size_t(std::ceil(level * double(n)));
  std::size_t best = 0;
  double best_width = x[k - 1] - x[0];
  for (std::size_t i = 1; i + k <= x.size(); ++i) {
    const double width = x[i + k - 1] - x[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {x[best], x[best + k - 1]};
}

MatrixXd thin(const MatrixXd& rows, int stride) {
  if (stride < 1) throw invalid_input("thin: stride >= 1 required");
  const auto n = (rows.rows() + stride - 1) / stride;
  MatrixXd out(n, rows.cols());
  for (Eigen::Index i = 0; i < n; ++i) out.row(i) = rows.row(i * stride);
  return out;
}

ChainTrace thin(const ChainTrace& trace, int stride) {
  if (stride < 1) throw invalid_input("thin: stride >= 1 required");
  ChainTrace out;
  for (std::size_t i = 0; i < trace.size(); i += std::size_t(stride)) {
    out.theta_natural.push_back(trace.theta_natural[i]);
    out.theta_chain.push_back(trace.theta_chain[i]);
    out.loglik.push_back(trace.loglik[i]);
    out.accepted.push_back(trace.accepted[i]);
    out.stage.push_back(trace.stage[i]);
    out.refreshed_block.push_back(trace.refreshed_block[i]);
  }
  return out;
}

MatrixXd natural_draws(const ChainTrace& trace, int tail_rows) {
  const auto n = trace.size();
  const auto take = tail_rows > 0 ? std::min(std::size_t(tail_rows), n) : n;
  if (take == 0) return MatrixXd(0, 0);
  MatrixXd out(take, trace.theta_natural.front().size());
  for (std::size_t i = 0; i < take; ++i)
    out.row(i) = trace.theta_natural[n - take + i].transpose();
  return out;
}

double acceptance_rate(const ChainTrace& trace, Stage stage) {
  std::size_t total = 0, accepted = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.stage[i] != stage) continue;
    ++total;
    accepted += trace.accepted[i];
  }
  if (total == 0) throw invalid_input("acceptance_rate: stage has no rows");
  return double(accepted) / double(total);
}

}  // namespace sl
