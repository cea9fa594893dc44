#include "sl/models/gk.hpp"

#include <cmath>
#include <vector>

#include "sl/errors.hpp"
#include "sl/summaries.hpp"

namespace sl {

double gk_simulate(const GkParams& p, double u) {
  if (!(p.B > 0.0) || !(p.k > -0.5))
    throw invalid_input("gk_simulate: need B > 0 and k > -0.5");
  const double e = std::exp(-p.g * u);
  return p.A +
         p.B * (1.0 + p.c * (1.0 - e) / (1.0 + e)) *
             std::pow(1.0 + u * u, p.k) * u;
}

VectorXd GkModel::simulate_summary(const VectorXd& theta_natural,
                                   std::span<const double> normals,
                                   std::span<const double>) const {
  if (int(normals.size()) != n_)
    throw invalid_input("GkModel: wrong normal budget");
  const GkParams p{theta_natural(0), theta_natural(1), theta_natural(2),
                   theta_natural(3)};
  std::vector<double> data(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i)
    data[i] = gk_simulate(p, normals[i]);
  return gk_summaries(data);
}

VectorXd GkModel::to_natural(const VectorXd& theta_chain) const {
  return theta_chain.array().exp();
}

VectorXd GkModel::to_chain(const VectorXd& theta_natural) const {
  return theta_natural.array().log();
}

PriorSpec gk_prior() {
  PriorSpec spec;
  spec.params.push_back({PriorMarginal::Kind::uniform, -30.0, 30.0,
                         PriorMarginal::Transform::log_scale});
  for (int i = 0; i < 3; ++i)
    spec.params.push_back({PriorMarginal::Kind::uniform, 0.0, 30.0,
                           PriorMarginal::Transform::log_scale});
  return spec;
}

}  // namespace sl
