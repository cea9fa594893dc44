#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sl/errors.hpp"
#include "sl/proposals.hpp"

using namespace sl;

namespace {
std::vector<VectorXd> random_history(Rng& rng, int n, int d) {
  std::vector<VectorXd> h;
  for (int i = 0; i < n; ++i) {
    VectorXd x(d);
    for (int j = 0; j < d; ++j) x(j) = draw_normal(rng);
    h.push_back(x);
  }
  return h;
}
}  // namespace

TEST_CASE("psd_sqrt squares back to the input") {
  Rng rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    MatrixXd a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = draw_normal(rng);
    MatrixXd spd = a * a.transpose() + 0.1 * MatrixXd::Identity(3, 3);
    MatrixXd l = psd_sqrt(spd);
    CHECK((l * l.transpose() - spd).cwiseAbs().maxCoeff() < 1e-12);
  }
  // PSD-but-singular input goes through the eigen fallback
  MatrixXd rank1 = MatrixXd::Zero(2, 2);
  rank1(0, 0) = 4.0;
  MatrixXd l = psd_sqrt(rank1);
  CHECK((l * l.transpose() - rank1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("haario_covariance matches the displayed schedule") {
  Rng rng(31);
  const int d = 3;
  HaarioState state;
  state.c_init = 0.3 * MatrixXd::Identity(d, d);
  state.burnin = 5;
  state.update_interval = 30;
  state.history = random_history(rng, 100, d);

  CHECK_THROWS_AS(haario_covariance(state, 0), invalid_input);
  CHECK((haario_covariance(state, 3) - state.c_init).cwiseAbs().maxCoeff() ==
        0.0);

  // brute-force oracle at the first post-burnin iteration
  const MatrixXd got = haario_covariance(state, 6);
  VectorXd mean = VectorXd::Zero(d);
  for (const auto& x : state.history) mean += x;
  mean /= double(state.history.size());
  MatrixXd cov = MatrixXd::Zero(d, d);
  for (const auto& x : state.history)
    cov += (x - mean) * (x - mean).transpose();
  cov /= double(state.history.size() - 1);
  const double scale = 2.4 * 2.4 / d;
  const MatrixXd want =
      scale * cov + scale * 1e-8 * MatrixXd::Identity(d, d);
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("haario_covariance caches between update points") {
  Rng rng(32);
  HaarioState state;
  state.c_init = MatrixXd::Identity(2, 2);
  state.burnin = 0;
  state.update_interval = 30;
  state.history = random_history(rng, 10, 2);

  const MatrixXd at_1 = haario_covariance(state, 1);
  state.history.push_back(VectorXd::Constant(2, 100.0));  // stale until r=30
  const MatrixXd at_2 = haario_covariance(state, 2);
  CHECK((at_1 - at_2).cwiseAbs().maxCoeff() == 0.0);
  const MatrixXd at_30 = haario_covariance(state, 30);
  CHECK((at_30 - at_2).cwiseAbs().maxCoeff() > 1.0);

  HaarioState empty = state;
  empty.history.clear();
  empty.cached_at = -1;
  CHECK_THROWS_AS(haario_covariance(empty, 1), invalid_state);
}

TEST_CASE("guided streaming moments equal the batch recomputation") {
  Rng rng(41);
  const int dt = 2, ds = 3;
  VectorXd s_obs(ds);
  s_obs << 0.1, -0.4, 1.2;
  GuidedProposal guided(dt, s_obs);

  std::vector<VectorXd> thetas, sbars;
  for (int n = 0; n < 60; ++n) {
    VectorXd th(dt), sb(ds);
    for (int j = 0; j < dt; ++j) th(j) = draw_normal(rng);
    for (int j = 0; j < ds; ++j) sb(j) = 0.5 * th(j % dt) + draw_normal(rng);
    thetas.push_back(th);
    sbars.push_back(sb);
    guided.append(th, sb);
    if (n >= dt + ds + 2) {  // full-rank joint covariance from here on
      VectorXd m_batch;
      MatrixXd s_batch;
      GuidedProposal::batch_conditional(thetas, sbars, s_obs, m_batch,
                                        s_batch);
      CHECK((guided.conditional_mean() - m_batch).cwiseAbs().maxCoeff() <
            1e-9);
      CHECK((guided.conditional_cov() - s_batch).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("guided proposal needs two pairs") {
  VectorXd s_obs = VectorXd::Zero(2);
  GuidedProposal guided(1, s_obs);
  CHECK_THROWS_AS(guided.conditional_mean(), invalid_state);
  guided.append(VectorXd::Constant(1, 0.5), VectorXd::Zero(2));
  CHECK_THROWS_AS(guided.propose_with(VectorXd::Zero(1)), invalid_state);
}

TEST_CASE("student proposal reduces to the scaled-z construction") {
  Rng rng(51);
  const int dt = 2, ds = 2;
  VectorXd s_obs(ds);
  s_obs << 0.0, 0.5;
  GuidedProposal guided(dt, s_obs, 5.0);
  for (int n = 0; n < 30; ++n) {
    VectorXd th(dt), sb(ds);
    for (int j = 0; j < dt; ++j) th(j) = draw_normal(rng);
    for (int j = 0; j < ds; ++j) sb(j) = draw_normal(rng);
    guided.append(th, sb);
  }
  VectorXd z(dt);
  z << 1.0, -2.0;
  // chi2 at its mean leaves only the sqrt((nu+delta)/(nu+ds)) inflation
  const double nu_eff = 5.0 + ds;
  const VectorXd gauss = guided.propose_with(z);
  const VectorXd stud = guided.propose_student_with(z, nu_eff);
  const VectorXd dir_g = gauss - guided.conditional_mean();
  const VectorXd dir_s = stud - guided.conditional_mean();
  const double ratio0 = dir_s(0) / dir_g(0);
  CHECK(dir_s(1) / dir_g(1) == doctest::Approx(ratio0).epsilon(1e-12));
  CHECK(ratio0 > 0.0);

  // log-density normalizes over a wide grid comparably to the gaussian one
  const double lg = guided.log_density(gauss, GuidedMode::gaussian);
  const double ls = guided.log_density(gauss, GuidedMode::student);
  CHECK(std::isfinite(lg));
  CHECK(std::isfinite(ls));
}

TEST_CASE("bootstrap_rejection_summary averages resampled rows") {
  SummaryMatrix rows(3, 2);
  rows << 1.0, 10.0, 1.0, 10.0, 1.0, 10.0;  // identical rows: mean is exact
  Rng rng(6);
  const VectorXd b = bootstrap_rejection_summary(rows, rng);
  CHECK(b(0) == 1.0);
  CHECK(b(1) == 10.0);

  SummaryMatrix varied(100, 1);
  for (int i = 0; i < 100; ++i) varied(i, 0) = double(i);
  double acc = 0.0;
  for (int rep = 0; rep < 500; ++rep)
    acc += bootstrap_rejection_summary(varied, rng)(0);
  CHECK(acc / 500.0 == doctest::Approx(49.5).epsilon(0.02));
}
