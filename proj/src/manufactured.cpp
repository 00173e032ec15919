#include "fl/manufactured.hpp"

#include <cmath>
#include <stdexcept>

#include "fl/special.hpp"

namespace fl {

double g_disc(const Vector2d& x) { return x.squaredNorm(); }
double g_annulus(const Vector2d& x) { return (4.0 * x.squaredNorm() - 1.0) / 3.0; }

Field2D family_rhs(const JacobiFamilySpec& spec) {
  if (!spec.g) throw std::invalid_argument("family_rhs: g is not set");
  if (spec.k < 0) throw std::invalid_argument("family_rhs: k must be non-negative");
  const double s = spec.s;
  const double kf = std::tgamma(spec.k + 1.0);
  const double c = std::pow(2.0, 2.0 * s) * std::pow(gamma_fn(s + spec.k + 1.0) / kf, 2) * (spec.k % 2 ? -1.0 : 1.0);
  return [c, s, k = spec.k, g = spec.g](const Vector2d& x) { return c * jacobi_p(k, s, 0.0, 2.0 * g(x) - 1.0); };
}

Field2D disc_exact_u(const JacobiFamilySpec& spec) {
  if (spec.domain_tag != "disc") throw std::invalid_argument("disc_exact_u: exact solution is known on the unit disc only");
  return [s = spec.s, k = spec.k](const Vector2d& x) {
    const double r2 = x.squaredNorm();
    if (r2 >= 1.0) return 0.0;
    return (k % 2 ? -1.0 : 1.0) * std::pow(1.0 - r2, s) * jacobi_p(k, s, 0.0, 2.0 * r2 - 1.0);
  };
}

std::function<double(double)> interval_family_u(double s, int k) {
  return [s, k](double x) {
    const double x2 = x * x;
    if (x2 >= 1.0) return 0.0;
    return std::pow(1.0 - x2, s) * jacobi_p(k, s, 0.0, 2.0 * x2 - 1.0);
  };
}

ErrorMetrics error_metrics(const Eigen::VectorXd& u, const Eigen::VectorXd& u_ref) {
  if (u.size() != u_ref.size() || u.size() == 0) throw std::invalid_argument("error_metrics: size mismatch");
  const double ref = u_ref.cwiseAbs().maxCoeff();
  if (!(ref > 0.0)) throw std::domain_error("error_metrics: reference field is zero");
  const Eigen::VectorXd d = u - u_ref;
  return {d.cwiseAbs().maxCoeff() / ref, std::sqrt(d.squaredNorm() / d.size())};
}

double noc(int N1, double eps1, int N2, double eps2) {
  return std::log(eps1 / eps2) / std::log(std::sqrt(static_cast<double>(N2) / N1));
}

void ConvergenceReport::add(int N, double eps_inf, double eps_rms, double wall_time) {
  ConvergenceRow row{N, eps_inf, eps_rms, std::nullopt, wall_time};
  if (!rows.empty()) {
    if (N <= rows.back().N) throw std::invalid_argument("ConvergenceReport: N must increase");
    row.noc = noc(rows.back(), row);
  }
  rows.push_back(row);
}

}  // namespace fl
