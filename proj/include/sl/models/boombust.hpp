#ifndef SL_MODELS_BOOMBUST_HPP
#define SL_MODELS_BOOMBUST_HPP

#include <vector>

#include "sl/model.hpp"
#include "sl/prior.hpp"

namespace sl {

struct BoomBustParams {
  double r;      // growth rate
  double kappa;  // threshold > 0
  double alpha;  // survival probability in [0,1]
  double beta;   // immigration rate >= 0
  int n1 = 10;   // initial population
};

// 300 transitions from N1, first 50 discarded: 250 counts.
std::vector<double> boombust_simulate(const BoomBustParams& p, Rng& rng);

// Stream-driven (Poisson/Binomial sampling has no fixed variate budget), so
// correlated likelihoods are unsupported here.
class BoomBustModel : public Model {
 public:
  std::string id() const override { return "boombust"; }
  int param_dim() const override { return 4; }
  int summary_dim() const override { return 12; }
  bool supports_variates() const override { return false; }

  VectorXd simulate_summary_stream(const VectorXd& theta_natural,
                                   Rng& rng) const override;
};

// r ~ U(0,1), kappa ~ U(10,80), alpha ~ U(0,1), beta ~ U(0,1).
PriorSpec boombust_prior();

}  // namespace sl

#endif
