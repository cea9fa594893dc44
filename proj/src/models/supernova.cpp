#include "sl/models/supernova.hpp"

#include <algorithm>
#include <cmath>

#include "sl/errors.hpp"
#include "sl/summaries.hpp"

namespace sl {

namespace {
constexpr double kCLight = 299792.458;  // km/s
constexpr double kRelTol = 1e-8;

struct InvE {
  double omega_m, de_exp, wa;
  double operator()(double z) const {
    const double zp = 1.0 + z;
    double de = std::pow(zp, de_exp);
    if (wa != 0.0) de *= std::exp(-3.0 * wa * z / zp);
    return 1.0 / std::sqrt(omega_m * zp * zp * zp + (1.0 - omega_m) * de);
  }
};

double simpson(const InvE& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  if (depth <= 0)
    throw numeric_failure("supernova_mu: quadrature failed to converge");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_inv_e(const InvE& f, double a, double b) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = kRelTol * std::max(std::abs(whole), 1e-3);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace

double supernova_truncated_normal(double u) {
  static const double pa = normal_cdf((0.01 - 0.5) / 0.05);
  static const double pb = normal_cdf((1.2 - 0.5) / 0.05);
  const double x = 0.5 + 0.05 * normal_quantile(pa + u * (pb - pa));
  return std::clamp(x, 0.01, 1.2);
}

VectorXd supernova_mu_many(const VectorXd& z_ascending,
                           const SupernovaParams& p) {
  if (!(p.omega_m > 0.0 && p.omega_m <= 1.0))
    throw invalid_input("supernova_mu: Omega_m outside (0,1]");
  const InvE f{p.omega_m, 3.0 * (1.0 + p.w0 + p.wa), p.wa};
  const double h_over_c = 100.0 * p.h0 / kCLight;
  VectorXd mu(z_ascending.size());
  double integral = 0.0, prev = 0.0;
  for (Eigen::Index i = 0; i < z_ascending.size(); ++i) {
    const double z = z_ascending(i);
    if (!(z > 0.0)) throw invalid_input("supernova_mu: need z > 0");
    if (z < prev)
      throw invalid_input("supernova_mu_many: redshifts must ascend");
    integral += integrate_inv_e(f, prev, z);
    mu(i) = 5.0 * std::log10((1.0 + z) / h_over_c * integral) + 25.0;
    prev = z;
  }
  return mu;
}

double supernova_mu(double z, const SupernovaParams& p) {
  VectorXd zv(1);
  zv << z;
  return supernova_mu_many(zv, p)(0);
}

VectorXd supernova_redshifts(std::span<const double> uniforms) {
  if (uniforms.empty()) throw invalid_input("supernova_redshifts: no draws");
  // Bin centers of 20 equal-width bins spanning [min, max] of the draws; the
  // inverse-cdf map is monotone, so min/max of the uniforms suffice.
  const auto [ulo, uhi] = std::minmax_element(uniforms.begin(), uniforms.end());
  const double lo = supernova_truncated_normal(*ulo);
  const double hi = supernova_truncated_normal(*uhi);
  const double width = (hi - lo) / 20.0;
  VectorXd z(20);
  for (int k = 0; k < 20; ++k) z(k) = lo + (k + 0.5) * width;
  return z;
}

VectorXd supernova_redshifts(Rng& rng) {
  std::vector<double> u(10000);
  fill_uniforms(rng, u);
  return supernova_redshifts(u);
}

VectorXd SupernovaModel::simulate_summary(const VectorXd& theta_natural,
                                          std::span<const double>,
                                          std::span<const double> uniforms) const {
  const SupernovaParams p{theta_natural(0), theta_natural(1)};
  return supernova_summaries(supernova_mu_many(supernova_redshifts(uniforms), p));
}

VectorXd SupernovaModel::to_natural(const VectorXd& theta_chain) const {
  VectorXd n = theta_chain;
  n(0) = std::exp(n(0));
  return n;
}

VectorXd SupernovaModel::to_chain(const VectorXd& theta_natural) const {
  VectorXd c = theta_natural;
  c(0) = std::log(c(0));
  return c;
}

PriorSpec supernova_prior() {
  PriorSpec spec;
  spec.params.push_back({PriorMarginal::Kind::beta, 3.0, 3.0,
                         PriorMarginal::Transform::log_scale});
  spec.params.push_back({PriorMarginal::Kind::normal, -0.5, 0.5,
                         PriorMarginal::Transform::identity});
  return spec;
}

}  // namespace sl
