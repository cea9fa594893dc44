#ifndef SL_MODELS_MIXTURE_HPP
#define SL_MODELS_MIXTURE_HPP

#include <Eigen/Dense>

#include "sl/model.hpp"
#include "sl/prior.hpp"

namespace sl {

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using Eigen::Vector2d;

struct MixtureParams {
  Vector2d mu1;
  Vector2d mu2;
  Matrix2d sigma1;  // fixed, known
  Matrix2d sigma2;  // fixed, known
};

// n draws from 0.5 N(mu1,S1) + 0.5 N(mu2,S2); normals has 2n entries,
// uniforms has n component picks (u < 0.5 selects component 1).
MatrixXd mixture_simulate(const MixtureParams& p,
                          std::span<const double> normals,
                          std::span<const double> uniforms);

// Ground-truth covariances: diagonals 4^2, sigma2 off-diagonals 12.
Matrix2d mixture_sigma1();
Matrix2d mixture_sigma2();

class MixtureModel : public Model {
 public:
  explicit MixtureModel(int n = 5000)
      : n_(n), sigma1_(mixture_sigma1()), sigma2_(mixture_sigma2()) {}

  std::string id() const override { return "mixture"; }
  int param_dim() const override { return 4; }
  int summary_dim() const override { return 4; }
  int normals_per_sim() const override { return 2 * n_; }
  int uniforms_per_sim() const override { return n_; }

  VectorXd simulate_summary(const VectorXd& theta_natural,
                            std::span<const double> normals,
                            std::span<const double> uniforms) const override;

  // Label-switching guard: sort the two mean pairs on the first coordinate.
  VectorXd canonicalize(const VectorXd& theta_chain) const override;

 private:
  int n_;
  Matrix2d sigma1_, sigma2_;
};

// Independent normals centered at the ground-truth means, sd 2.
PriorSpec mixture_prior();

}  // namespace sl

#endif
