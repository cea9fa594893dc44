#ifndef SL_MODEL_HPP
#define SL_MODEL_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sl/rng.hpp"

namespace sl {

using Eigen::VectorXd;

// A stochastic simulator plus its summary map and parameter transforms.
// The chain moves on the "chain scale"; to_natural maps a chain-scale point
// to the simulator's natural parameterization.
//
// Two variate regimes:
//  - variate-driven (supports_variates() == true): one simulation consumes a
//    fixed budget of standard normals / uniforms, which makes blocked
//    correlated likelihoods possible;
//  - stream-driven: the simulator consumes an rng stream of unpredictable
//    length (e.g. Poisson sampling) and correlated likelihoods are off.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string id() const = 0;
  virtual int param_dim() const = 0;
  virtual int summary_dim() const = 0;

  virtual bool supports_variates() const { return true; }
  virtual int normals_per_sim() const { return 0; }
  virtual int uniforms_per_sim() const { return 0; }

  // Simulate one dataset and return its summary vector.
  virtual VectorXd simulate_summary(const VectorXd& theta_natural,
                                    std::span<const double> normals,
                                    std::span<const double> uniforms) const;

  virtual VectorXd simulate_summary_stream(const VectorXd& theta_natural,
                                           Rng& rng) const;

  virtual VectorXd to_natural(const VectorXd& theta_chain) const {
    return theta_chain;
  }
  virtual VectorXd to_chain(const VectorXd& theta_natural) const {
    return theta_natural;
  }

  // log |d to_natural / d theta_chain| at a chain-scale point; transforms are
  // elementwise, so this is a sum of per-coordinate log-derivatives. Needed
  // when a proposal density over natural parameters enters a chain-scale
  // Metropolis-Hastings ratio.
  virtual double log_jacobian_natural(const VectorXd&) const { return 0.0; }

  // Hook applied to every proposed chain-scale point before evaluation
  // (e.g. component-mean sorting against label switching).
  virtual VectorXd canonicalize(const VectorXd& theta_chain) const {
    return theta_chain;
  }
};

// Registry keyed by the string ids used in config files.
std::unique_ptr<Model> make_model(const std::string& id);
std::vector<std::string> model_ids();

}  // namespace sl

#endif
