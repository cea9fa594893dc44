#include "sl/models/stable.hpp"

#include <cmath>
#include <vector>

#include "sl/errors.hpp"
#include "sl/summaries.hpp"

namespace sl {

namespace {
constexpr double kHalfPi = M_PI / 2.0;

double draw_alpha1_branch(double beta, double w, double u2, bool perturbed) {
  const double denom = kHalfPi + beta * u2;
  // Weron's correction drops the pi/2 factor inside the log; the perturbed
  // sampler's displayed equations keep it.
  const double arg =
      (perturbed ? kHalfPi * w : w) * std::cos(u2) / denom;
  return (2.0 / M_PI) * (denom * std::tan(u2) - beta * std::log(arg));
}

double draw_general_branch(double alpha, double beta, double w, double u2) {
  const double t = beta * std::tan(kHalfPi * alpha);
  const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * alpha));
  const double b = std::atan(t) / alpha;
  return s * std::sin(alpha * (u2 + b)) /
         std::pow(std::cos(u2), 1.0 / alpha) *
         std::pow(std::cos(u2 - alpha * (u2 + b)) / w,
                  (1.0 - alpha) / alpha);
}
}  // namespace

double stable_draw(const StableParams& p, double u1, double u2) {
  if (!(p.alpha > 0.5 && p.alpha <= 2.0) || !(p.beta >= -1.0 && p.beta <= 1.0) ||
      !(p.gamma > 0.0))
    throw invalid_input("stable_draw: parameters outside the constrained box");
  const double w = -std::log(u1);
  const bool alpha1 =
      p.perturbed ? (p.alpha >= 0.97 && p.alpha <= 1.03) : p.alpha == 1.0;
  if (alpha1) {
    const double y = draw_alpha1_branch(p.beta, w, u2, p.perturbed);
    return p.gamma * y + (2.0 / M_PI) * p.beta * p.gamma * std::log(p.gamma) +
           p.delta;
  }
  return p.gamma * draw_general_branch(p.alpha, p.beta, w, u2) + p.delta;
}

namespace {
double alpha_forward(double a) { return std::log(a - 0.5) / (2.0 - a); }
double beta_forward(double b) { return std::log(b + 1.0) / (1.0 - b); }

// Invert a strictly increasing map on (lo, hi) by bisection.
double bisect_inverse(double target, double lo, double hi,
                      double (*f)(double)) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;
    (f(mid) < target ? lo : hi) = mid;
  }
  throw numeric_failure("stable_inverse: bisection failed to converge");
}
}  // namespace

VectorXd stable_transform(const VectorXd& natural) {
  if (natural.size() != 4) throw invalid_input("stable_transform: need 4 params");
  const double a = natural(0), b = natural(1), g = natural(2);
  if (!(a > 0.5 && a < 2.0) || !(b > -1.0 && b < 1.0) || !(g > 0.0))
    throw invalid_input("stable_transform: outside the open constrained box");
  VectorXd t(4);
  t << alpha_forward(a), beta_forward(b), std::log(g), natural(3);
  return t;
}

VectorXd stable_inverse(const VectorXd& transformed) {
  if (transformed.size() != 4)
    throw invalid_input("stable_inverse: need 4 coordinates");
  VectorXd n(4);
  n << bisect_inverse(transformed(0), 0.5, 2.0, alpha_forward),
      bisect_inverse(transformed(1), -1.0, 1.0, beta_forward),
      std::exp(transformed(2)), transformed(3);
  return n;
}

VectorXd StableModel::simulate_summary(const VectorXd& theta_natural,
                                       std::span<const double> normals,
                                       std::span<const double> uniforms) const {
  (void)normals;
  if (int(uniforms.size()) != 2 * n_)
    throw invalid_input("StableModel: wrong uniform budget");
  StableParams p{theta_natural(0), theta_natural(1), theta_natural(2),
                 theta_natural(3), perturbed_};
  std::vector<double> y(n_);
  for (int i = 0; i < n_; ++i) {
    const double u1 = uniforms[2 * i];
    const double u2 = M_PI * (uniforms[2 * i + 1] - 0.5);
    y[i] = stable_draw(p, u1, u2);
  }
  return mcculloch_summaries(y, 1.0);
}

VectorXd StableModel::to_natural(const VectorXd& theta_chain) const {
  return stable_inverse(theta_chain);
}

VectorXd StableModel::to_chain(const VectorXd& theta_natural) const {
  return stable_transform(theta_natural);
}

double StableModel::log_jacobian_natural(const VectorXd& theta_chain) const {
  const VectorXd n = stable_inverse(theta_chain);
  const double a = n(0), b = n(1);
  // d(forward)/d(natural); the chain->natural Jacobian is its reciprocal
  const double da = 1.0 / ((a - 0.5) * (2.0 - a)) +
                    std::log(a - 0.5) / ((2.0 - a) * (2.0 - a));
  const double db = 1.0 / ((b + 1.0) * (1.0 - b)) +
                    std::log(b + 1.0) / ((1.0 - b) * (1.0 - b));
  return -std::log(da) - std::log(db) + theta_chain(2);
}

PriorSpec stable_prior() {
  PriorSpec spec;
  for (int i = 0; i < 4; ++i)
    spec.params.push_back({PriorMarginal::Kind::std_normal_transformed, 0.0,
                           1.0, PriorMarginal::Transform::identity});
  return spec;
}

}  // namespace sl
