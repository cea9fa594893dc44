#ifndef SL_MODELS_GK_HPP
#define SL_MODELS_GK_HPP

#include "sl/model.hpp"
#include "sl/prior.hpp"

namespace sl {

struct GkParams {
  double A;
  double B;  // > 0
  double g;
  double k;  // > -0.5
  double c = 0.8;
};

// Quantile-function draw: Q(u) for u standard normal.
double gk_simulate(const GkParams& p, double u);

class GkModel : public Model {
 public:
  explicit GkModel(int n = 1000) : n_(n) {}

  std::string id() const override { return "gk"; }
  int param_dim() const override { return 4; }
  int summary_dim() const override { return 4; }
  int normals_per_sim() const override { return n_; }

  VectorXd simulate_summary(const VectorXd& theta_natural,
                            std::span<const double> normals,
                            std::span<const double> uniforms) const override;

  // Chain moves on (log A, log B, log g, log k).
  VectorXd to_natural(const VectorXd& theta_chain) const override;
  VectorXd to_chain(const VectorXd& theta_natural) const override;
  double log_jacobian_natural(const VectorXd& theta_chain) const override {
    return theta_chain.sum();  // d exp(x)/dx = exp(x)
  }

 private:
  int n_;
};

// A ~ U(-30,30), B,g,k ~ U(0,30), chain on log scale.
PriorSpec gk_prior();

}  // namespace sl

#endif
