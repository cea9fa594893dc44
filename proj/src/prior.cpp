#include "sl/prior.hpp"

#include <cmath>
#include <limits>

#include "sl/errors.hpp"

namespace sl {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_marginal_natural(const PriorMarginal& p, double x) {
  switch (p.kind) {
    case PriorMarginal::Kind::uniform:
      return (x >= p.a && x <= p.b) ? -std::log(p.b - p.a) : kNegInf;
    case PriorMarginal::Kind::normal: {
      const double z = (x - p.a) / p.b;
      return -0.5 * z * z - std::log(p.b) - 0.5 * std::log(2.0 * M_PI);
    }
    case PriorMarginal::Kind::beta: {
      if (x <= 0.0 || x >= 1.0) return kNegInf;
      return (p.a - 1.0) * std::log(x) + (p.b - 1.0) * std::log1p(-x) +
             std::lgamma(p.a + p.b) - std::lgamma(p.a) - std::lgamma(p.b);
    }
    case PriorMarginal::Kind::std_normal_transformed:
      break;  // handled on the chain scale directly
  }
  throw invalid_input("log_marginal_natural: unhandled prior kind");
}
}  // namespace

double PriorSpec::log_density_chain(const VectorXd& theta_chain) const {
  if (theta_chain.size() != dim())
    throw invalid_input("PriorSpec: dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < dim(); ++i) {
    const PriorMarginal& p = params[i];
    const double phi = theta_chain(i);
    if (p.kind == PriorMarginal::Kind::std_normal_transformed) {
      acc += -0.5 * phi * phi - 0.5 * std::log(2.0 * M_PI);
      continue;
    }
    if (p.transform == PriorMarginal::Transform::log_scale) {
      // natural x = exp(phi); Jacobian dx/dphi = x
      acc += log_marginal_natural(p, std::exp(phi)) + phi;
    } else {
      acc += log_marginal_natural(p, phi);
    }
    if (acc == kNegInf) return kNegInf;
  }
  return acc;
}

}  // namespace sl
