#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sl/errors.hpp"
#include "sl/models/boombust.hpp"
#include "sl/models/gk.hpp"
#include "sl/models/mixture.hpp"
#include "sl/models/stable.hpp"
#include "sl/models/supernova.hpp"

using namespace sl;

// ---------------------------------------------------------------------------
// g-and-k

TEST_CASE("gk quantile function: anchors and reductions") {
  const GkParams p{3.0, 1.0, 2.0, 0.5};
  CHECK(gk_simulate(p, 0.0) == 3.0);  // Q(0) = A

  // g = k = 0 reduces to A + B u
  const GkParams lin{3.0, 2.0, 0.0, 0.0};
  for (double u : {-2.0, -0.3, 0.0, 1.7})
    CHECK(gk_simulate(lin, u) == doctest::Approx(3.0 + 2.0 * u));

  // a valid quantile function is non-decreasing in u
  double prev = -1e300;
  for (double u = -4.0; u <= 4.0; u += 0.01) {
    const double q = gk_simulate(p, u);
    CHECK(q >= prev);
    prev = q;
  }

  CHECK_THROWS_AS(gk_simulate(GkParams{0.0, -1.0, 0.0, 0.0}, 0.5),
                  invalid_input);
  CHECK_THROWS_AS(gk_simulate(GkParams{0.0, 1.0, 0.0, -0.6}, 0.5),
                  invalid_input);
}

TEST_CASE("gk chain transform round trip") {
  GkModel model;
  VectorXd nat(4);
  nat << 3.0, 1.0, 2.0, 0.5;
  const VectorXd chain = model.to_chain(nat);
  CHECK((chain - nat.array().log().matrix()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((model.to_natural(chain) - nat).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(gk_prior().dim() == 4);
}

// ---------------------------------------------------------------------------
// boom and bust

TEST_CASE("boombust absorbs at zero when survival is impossible") {
  // kappa below the initial population forces the binomial branch; with
  // alpha = 0 and no immigration the process dies immediately.
  const BoomBustParams p{0.5, 1e-6, 0.0, 0.0};
  Rng rng(1);
  const std::vector<double> path = boombust_simulate(p, rng);
  REQUIRE(path.size() == 250);
  for (double v : path) CHECK(v == 0.0);
}

TEST_CASE("boombust paths are non-negative integers") {
  const BoomBustParams p{0.5, 20.0, 0.05, 0.1};
  Rng rng(2);
  bool any_positive = false;
  for (int rep = 0; rep < 10; ++rep) {
    const std::vector<double> path = boombust_simulate(p, rng);
    for (double v : path) {
      CHECK(v >= 0.0);
      CHECK(v == std::floor(v));
      any_positive = any_positive || v > 0.0;
    }
  }
  CHECK(any_positive);
}

TEST_CASE("boombust with r = 0 and no busts is a mean-10 martingale") {
  // Poisson(n) transitions keep E[N_t] = n1; check the replicate mean of the
  // kept segment against 10 within 4 empirical standard errors.
  const BoomBustParams p{0.0, 1e12, 0.5, 0.0};
  Rng rng(3);
  const int reps = 800;
  std::vector<double> means(reps);
  for (int rep = 0; rep < reps; ++rep) {
    const std::vector<double> path = boombust_simulate(p, rng);
    double acc = 0.0;
    for (double v : path) acc += v;
    means[rep] = acc / double(path.size());
  }
  double mean = 0.0;
  for (double m : means) mean += m / reps;
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean) / (reps - 1);
  const double se = std::sqrt(var / reps);
  CHECK(std::abs(mean - 10.0) < 4.0 * se);
}

TEST_CASE("boombust model summaries are finite at the set-2 parameters") {
  BoomBustModel model;
  VectorXd theta(4);
  theta << 0.4, 50.0, 0.09, 0.05;
  Rng rng(4);
  const VectorXd s = model.simulate_summary_stream(theta, rng);
  REQUIRE(s.size() == 12);
  CHECK(s.allFinite());
  CHECK(s(0) > 0.0);  // mean population
}

// ---------------------------------------------------------------------------
// mixture

TEST_CASE("mixture_simulate with pinned variates hits the component means") {
  MixtureParams p;
  p.mu1 << -5.0, 10.0;
  p.mu2 << 30.0, 20.0;
  p.sigma1 = mixture_sigma1();
  p.sigma2 = mixture_sigma2();

  const std::vector<double> z0(4, 0.0);
  const std::vector<double> pick1(2, 0.2), pick2(2, 0.9);
  MatrixXd a = mixture_simulate(p, z0, pick1);
  MatrixXd b = mixture_simulate(p, z0, pick2);
  for (int i = 0; i < 2; ++i) {
    CHECK((a.row(i).transpose() - p.mu1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.row(i).transpose() - p.mu2).cwiseAbs().maxCoeff() == 0.0);
  }

  // z = (1, 0): the draw is mu + first Cholesky column; sigma2 gives (4, 3)
  const std::vector<double> z10{1.0, 0.0};
  const std::vector<double> one_pick{0.9};
  MatrixXd c = mixture_simulate(p, z10, one_pick);
  CHECK(c(0, 0) == doctest::Approx(30.0 + 4.0));
  CHECK(c(0, 1) == doctest::Approx(20.0 + 3.0));
}

TEST_CASE("mixture canonicalize sorts the mean pairs") {
  MixtureModel model;
  VectorXd theta(4);
  theta << 5.0, 0.0, -5.0, 1.0;
  VectorXd sorted = model.canonicalize(theta);
  CHECK(sorted(0) == -5.0);
  CHECK(sorted(1) == 1.0);
  CHECK(sorted(2) == 5.0);
  CHECK(sorted(3) == 0.0);
  CHECK((model.canonicalize(sorted) - sorted).cwiseAbs().maxCoeff() ==
        0.0);  // idempotent

  VectorXd tie(4);
  tie << 2.0, 7.0, 2.0, -7.0;  // tie on the first coordinate: sort on second
  const VectorXd t = model.canonicalize(tie);
  CHECK(t(1) == -7.0);
  CHECK(t(3) == 7.0);
}

TEST_CASE("mixture model summary at the ground truth") {
  MixtureModel model;
  VectorXd truth(4);
  truth << -5.0, 10.0, 30.0, 20.0;
  Rng rng(5);
  const VectorXd s = model.simulate_summary_stream(truth, rng);
  CHECK((s - truth).cwiseAbs().maxCoeff() < 0.5);
}

// ---------------------------------------------------------------------------
// alpha-stable

TEST_CASE("stable_draw reduces to Cauchy at alpha = 1, beta = 0") {
  for (double u2 : {-1.2, -0.4, 0.0, 0.7, 1.3}) {
    CHECK(stable_draw({1.0, 0.0, 1.0, 0.0}, 0.3, u2) ==
          doctest::Approx(std::tan(u2)).epsilon(1e-12));
    // scale and location act affinely
    CHECK(stable_draw({1.0, 0.0, 2.0, 5.0}, 0.3, u2) ==
          doctest::Approx(2.0 * std::tan(u2) + 5.0).epsilon(1e-12));
  }
}

TEST_CASE("stable_draw reduces to 2 sqrt(w) sin(u2) at alpha = 2") {
  const double u1 = std::exp(-1.0);  // w = 1
  CHECK(stable_draw({2.0, 0.0, 1.0, 0.0}, u1, M_PI / 6.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  for (double u2 : {-1.0, 0.3, 1.2})
    for (double u1v : {0.2, 0.8})
      CHECK(stable_draw({2.0, 0.7, 1.0, 0.0}, u1v, u2) ==
            doctest::Approx(2.0 * std::sqrt(-std::log(u1v)) * std::sin(u2))
                .epsilon(1e-8));  // beta is irrelevant at alpha = 2
}

TEST_CASE("alpha = 2 draws have gaussian variance and no skew") {
  Rng rng(6);
  const int n = 100000;
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i)
    y[i] = stable_draw({2.0, 0.0, 1.0, 0.0}, draw_uniform(rng),
                       M_PI * (draw_uniform(rng) - 0.5));
  double mean = 0.0;
  for (double v : y) mean += v / n;
  double m2 = 0.0, m3 = 0.0;
  for (double v : y) {
    m2 += std::pow(v - mean, 2) / n;
    m3 += std::pow(v - mean, 3) / n;
  }
  CHECK(m2 > 1.8);  // S(2, 0) is N(0, 2)
  CHECK(m2 < 2.2);
  CHECK(std::abs(m3 / std::pow(m2, 1.5)) < 0.05);
}

TEST_CASE("perturbed and plain samplers use different branches near alpha = 1") {
  const double u1 = 0.37, u2 = 0.8;
  const double plain = stable_draw({1.02, 0.5, 1.0, 0.0, false}, u1, u2);
  const double pert = stable_draw({1.02, 0.5, 1.0, 0.0, true}, u1, u2);
  CHECK(plain != pert);
  // away from the window both agree
  const double p2 = stable_draw({1.5, 0.5, 1.0, 0.0, false}, u1, u2);
  const double p3 = stable_draw({1.5, 0.5, 1.0, 0.0, true}, u1, u2);
  CHECK(p2 == p3);
}

TEST_CASE("stable transform round trips and guards the open box") {
  VectorXd nat(4);
  nat << 1.3, 0.2, 2.0, -1.0;
  const VectorXd t = stable_transform(nat);
  CHECK((stable_inverse(t) - nat).cwiseAbs().maxCoeff() < 1e-8);

  VectorXd fixed(4);
  fixed << 1.5, 0.0, 1.0, 0.7;  // both logs vanish at these values
  const VectorXd tf = stable_transform(fixed);
  CHECK(tf(0) == doctest::Approx(0.0));
  CHECK(tf(1) == doctest::Approx(0.0));
  CHECK(tf(2) == doctest::Approx(0.0));
  CHECK(tf(3) == 0.7);

  // forward maps are strictly increasing (bisection invertibility)
  double prev_a = -1e300, prev_b = -1e300;
  for (double x = 0.51; x < 1.99; x += 0.01) {
    const double a = stable_transform((VectorXd(4) << x, 0.0, 1.0, 0.0)
                                          .finished())(0);
    CHECK(a > prev_a);
    prev_a = a;
  }
  for (double x = -0.99; x < 0.99; x += 0.01) {
    const double b = stable_transform((VectorXd(4) << 1.25, x, 1.0, 0.0)
                                          .finished())(1);
    CHECK(b > prev_b);
    prev_b = b;
  }

  VectorXd bad = nat;
  bad(0) = 2.0;
  CHECK_THROWS_AS(stable_transform(bad), invalid_input);
  bad = nat;
  bad(1) = 1.0;
  CHECK_THROWS_AS(stable_transform(bad), invalid_input);
}

// ---------------------------------------------------------------------------
// supernova

TEST_CASE("supernova distance modulus: Einstein-de-Sitter closed form") {
  // Omega_m = 1: E = (1+z)^{3/2} and int_0^3 dz/E = 1 exactly.
  const SupernovaParams p{1.0, -1.0};
  const double want = 5.0 * std::log10(4.0 * 299792.458 / 70.0) + 25.0;
  CHECK(supernova_mu(3.0, p) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("supernova_mu_many equals pointwise evaluation and is monotone") {
  const SupernovaParams p{0.3, -1.0};
  VectorXd z = VectorXd::LinSpaced(20, 0.05, 1.2);
  const VectorXd mu = supernova_mu_many(z, p);
  double prev = -1e300;
  for (int i = 0; i < 20; ++i) {
    CHECK(mu(i) == doctest::Approx(supernova_mu(z(i), p)).epsilon(1e-9));
    CHECK(mu(i) > prev);
    prev = mu(i);
  }

  VectorXd bad(2);
  bad << 0.5, 0.4;  // not ascending
  CHECK_THROWS_AS(supernova_mu_many(bad, p), invalid_input);
}

TEST_CASE("truncated-normal redshift sampler") {
  CHECK(supernova_truncated_normal(0.0) == doctest::Approx(0.01));
  CHECK(supernova_truncated_normal(1.0) == doctest::Approx(1.2));
  CHECK(supernova_truncated_normal(0.5) == doctest::Approx(0.5).epsilon(1e-9));
  double prev = -1.0;
  for (double u = 0.0; u <= 1.0; u += 0.01) {
    const double x = supernova_truncated_normal(u);
    CHECK(x >= 0.01);
    CHECK(x <= 1.2);
    CHECK(x >= prev);
    prev = x;
  }
}

TEST_CASE("supernova_redshifts: 20 equally spaced ascending bin centers") {
  Rng rng(7);
  const VectorXd z = supernova_redshifts(rng);
  REQUIRE(z.size() == 20);
  const double width = z(1) - z(0);
  CHECK(width > 0.0);
  for (int i = 1; i < 20; ++i)
    CHECK(z(i) - z(i - 1) == doctest::Approx(width).epsilon(1e-12));
  CHECK(z(0) > 0.01);
  CHECK(z(19) < 1.2);
  // the center-of-range sits at (min + max)/2; extremes fluctuate at the
  // 0.01-0.02 scale for 10^4 draws
  CHECK(z.mean() > 0.45);
  CHECK(z.mean() < 0.55);
}

TEST_CASE("supernova chain transform and prior shape") {
  SupernovaModel model;
  VectorXd nat(2);
  nat << 0.3, -1.0;
  const VectorXd chain = model.to_chain(nat);
  CHECK(chain(0) == doctest::Approx(std::log(0.3)));
  CHECK(chain(1) == -1.0);
  CHECK((model.to_natural(chain) - nat).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(supernova_prior().dim() == 2);
}

// ---------------------------------------------------------------------------
// chain-scale Jacobians

TEST_CASE("log_jacobian_natural matches a finite-difference determinant") {
  // [DERIVED] all transforms are elementwise, so the Jacobian determinant is
  // the product of central-difference derivatives of to_natural.
  const auto fd_logdet = [](const Model& model, const VectorXd& chain) {
    const double h = 1e-6;
    double acc = 0.0;
    for (int i = 0; i < chain.size(); ++i) {
      VectorXd up = chain, dn = chain;
      up(i) += h;
      dn(i) -= h;
      acc += std::log((model.to_natural(up)(i) - model.to_natural(dn)(i)) /
                      (2.0 * h));
    }
    return acc;
  };

  GkModel gk;
  VectorXd gk_nat(4);
  gk_nat << 3.0, 1.0, 2.0, 0.5;
  const VectorXd gk_chain = gk.to_chain(gk_nat);
  CHECK(gk.log_jacobian_natural(gk_chain) ==
        doctest::Approx(fd_logdet(gk, gk_chain)).epsilon(1e-7));

  SupernovaModel sn;
  VectorXd sn_nat(2);
  sn_nat << 0.3, -1.0;
  const VectorXd sn_chain = sn.to_chain(sn_nat);
  CHECK(sn.log_jacobian_natural(sn_chain) ==
        doctest::Approx(fd_logdet(sn, sn_chain)).epsilon(1e-7));

  StableModel st;
  VectorXd st_nat(4);
  st_nat << 1.7, 0.9, 10.0, 10.0;
  const VectorXd st_chain = st.to_chain(st_nat);
  CHECK(st.log_jacobian_natural(st_chain) ==
        doctest::Approx(fd_logdet(st, st_chain)).epsilon(1e-5));

  // identity transforms carry no correction
  BoomBustModel bb;
  VectorXd bb_chain(4);
  bb_chain << 0.4, 50.0, 0.09, 0.05;
  CHECK(bb.log_jacobian_natural(bb_chain) == 0.0);
}
