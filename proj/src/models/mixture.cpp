#include "sl/models/mixture.hpp"

#include "sl/errors.hpp"
#include "sl/summaries.hpp"

namespace sl {

Matrix2d mixture_sigma1() {
  Matrix2d s;
  s << 16.0, 0.0, 0.0, 16.0;
  return s;
}

Matrix2d mixture_sigma2() {
  Matrix2d s;
  s << 16.0, 12.0, 12.0, 16.0;
  return s;
}

MatrixXd mixture_simulate(const MixtureParams& p,
                          std::span<const double> normals,
                          std::span<const double> uniforms) {
  const auto n = uniforms.size();
  if (normals.size() != 2 * n)
    throw invalid_input("mixture_simulate: need 2 normals per point");
  const Matrix2d l1 = p.sigma1.llt().matrixL();
  const Matrix2d l2 = p.sigma2.llt().matrixL();
  MatrixXd pts(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector2d z(normals[2 * i], normals[2 * i + 1]);
    const bool first = uniforms[i] < 0.5;
    pts.row(i) =
        ((first ? p.mu1 : p.mu2) + (first ? l1 : l2) * z).transpose();
  }
  return pts;
}

VectorXd MixtureModel::simulate_summary(const VectorXd& theta_natural,
                                        std::span<const double> normals,
                                        std::span<const double> uniforms) const {
  const MixtureParams p{theta_natural.segment<2>(0), theta_natural.segment<2>(2),
                        sigma1_, sigma2_};
  return mixture_summaries(mixture_simulate(p, normals, uniforms), sigma1_,
                           sigma2_);
}

VectorXd MixtureModel::canonicalize(const VectorXd& theta_chain) const {
  VectorXd t = theta_chain;
  if (t(2) < t(0) || (t(2) == t(0) && t(3) < t(1))) {
    std::swap(t(0), t(2));
    std::swap(t(1), t(3));
  }
  return t;
}

PriorSpec mixture_prior() {
  PriorSpec spec;
  for (double mean : {-5.0, 10.0, 30.0, 20.0})
    spec.params.push_back({PriorMarginal::Kind::normal, mean, 2.0,
                           PriorMarginal::Transform::identity});
  return spec;
}

}  // namespace sl
