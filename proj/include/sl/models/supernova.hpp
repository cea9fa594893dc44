#ifndef SL_MODELS_SUPERNOVA_HPP
#define SL_MODELS_SUPERNOVA_HPP

#include "sl/model.hpp"
#include "sl/prior.hpp"

namespace sl {

struct SupernovaParams {
  double omega_m;  // (0, 1]
  double w0;
  double wa = 0.0;  // CPL scale term, 0 means constant EoS
  double h0 = 0.7;  // fixed
};

// Distance modulus mu(z) = 5 log10(c(1+z)/H0 * int_0^z dz'/E(z')) + 25 with
// c = 299792.458 km/s, H0 = 100*h0 km/s/Mpc; flat universe,
// E(z) = sqrt(Om(1+z)^3 + (1-Om)(1+z)^{3(1+w0+wa)} exp(-3 wa z/(1+z))).
double supernova_mu(double z, const SupernovaParams& p);

// Cumulative evaluation over an ascending z grid (one quadrature sweep).
VectorXd supernova_mu_many(const VectorXd& z_ascending,
                           const SupernovaParams& p);

// Inverse-cdf draw from N_{[0.01,1.2]}(0.5, 0.05^2), monotone in u.
double supernova_truncated_normal(double u);

// 20 ascending equal-width bin centers of 10^4 truncated normals
// N_{[0.01,1.2]}(0.5, 0.05^2); uniforms drives the inverse-cdf sampling.
VectorXd supernova_redshifts(std::span<const double> uniforms);
VectorXd supernova_redshifts(Rng& rng);

class SupernovaModel : public Model {
 public:
  std::string id() const override { return "supernova"; }
  int param_dim() const override { return 2; }
  int summary_dim() const override { return 20; }
  int uniforms_per_sim() const override { return 10000; }

  VectorXd simulate_summary(const VectorXd& theta_natural,
                            std::span<const double> normals,
                            std::span<const double> uniforms) const override;

  // Chain moves on (log Omega_m, w0).
  VectorXd to_natural(const VectorXd& theta_chain) const override;
  VectorXd to_chain(const VectorXd& theta_natural) const override;
  double log_jacobian_natural(const VectorXd& theta_chain) const override {
    return theta_chain(0);
  }
};

// Omega_m ~ Beta(3,3) (chain on log scale), w0 ~ N(-0.5, 0.5^2).
PriorSpec supernova_prior();

}  // namespace sl

#endif
