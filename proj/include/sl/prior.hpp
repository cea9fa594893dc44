#ifndef SL_PRIOR_HPP
#define SL_PRIOR_HPP

#include <vector>

#include <Eigen/Dense>

namespace sl {

using Eigen::VectorXd;

// Per-parameter prior marginal. The chain may move on a transformed
// coordinate (log of the natural parameter); log_density_chain accounts for
// the Jacobian so the chain targets the stated natural-scale prior.
struct PriorMarginal {
  enum class Kind { uniform, normal, beta, std_normal_transformed };
  enum class Transform { identity, log_scale };
  Kind kind = Kind::uniform;
  double a = 0.0;  // uniform lo / normal mean / beta alpha
  double b = 1.0;  // uniform hi / normal sd   / beta beta
  Transform transform = Transform::identity;
};

struct PriorSpec {
  std::vector<PriorMarginal> params;

  int dim() const { return int(params.size()); }
  // Log prior density of a chain-scale point, -inf outside support.
  double log_density_chain(const VectorXd& theta_chain) const;
};

}  // namespace sl

#endif
