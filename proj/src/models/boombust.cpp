#include "sl/models/boombust.hpp"

#include <random>

#include "sl/errors.hpp"
#include "sl/summaries.hpp"

namespace sl {

std::vector<double> boombust_simulate(const BoomBustParams& p, Rng& rng) {
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0) || !(p.beta >= 0.0) ||
      !(p.kappa > 0.0))
    throw invalid_input("boombust_simulate: invalid parameters");
  constexpr int steps = 300, keep = 250;
  std::vector<double> y;
  y.reserve(keep);
  long n = p.n1;
  for (int t = 0; t < steps; ++t) {
    long next;
    if (double(n) <= p.kappa) {
      next = n > 0 ? std::poisson_distribution<long>(double(n) * (1.0 + p.r))(rng)
                   : 0;
    } else {
      next = std::binomial_distribution<long>(n, p.alpha)(rng);
    }
    if (p.beta > 0.0) next += std::poisson_distribution<long>(p.beta)(rng);
    n = next;
    if (t >= steps - keep) y.push_back(double(n));
  }
  return y;
}

VectorXd BoomBustModel::simulate_summary_stream(const VectorXd& theta_natural,
                                                Rng& rng) const {
  const BoomBustParams p{theta_natural(0), theta_natural(1), theta_natural(2),
                         theta_natural(3)};
  return boombust_summaries(boombust_simulate(p, rng));
}

PriorSpec boombust_prior() {
  PriorSpec spec;
  spec.params.push_back({PriorMarginal::Kind::uniform, 0.0, 1.0,
                         PriorMarginal::Transform::identity});
  spec.params.push_back({PriorMarginal::Kind::uniform, 10.0, 80.0,
                         PriorMarginal::Transform::identity});
  spec.params.push_back({PriorMarginal::Kind::uniform, 0.0, 1.0,
                         PriorMarginal::Transform::identity});
  spec.params.push_back({PriorMarginal::Kind::uniform, 0.0, 1.0,
                         PriorMarginal::Transform::identity});
  return spec;
}

}  // namespace sl
