#include "fl/solver1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fl/interp.hpp"
#include "fl/quadrature.hpp"

namespace fl {

double ChebSeries::operator()(double x) const {
  const double t = (2.0 * x - a - b) / (b - a);
  double b1 = 0.0, b2 = 0.0;
  for (Eigen::Index k = coeffs.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * t * b1 - b2 + coeffs[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (coeffs.size() ? coeffs[0] : 0.0);
}

ChebSeries ChebSeries::integral() const {
  const Eigen::Index n = coeffs.size();
  ChebSeries out{a, b, Eigen::VectorXd::Zero(n + 1)};
  auto c = [&](Eigen::Index k) { return k < n ? coeffs[k] : 0.0; };
  const double h = 0.5 * (b - a);
  for (Eigen::Index k = 1; k <= n; ++k)
    out.coeffs[k] = h * (k == 1 ? c(0) - 0.5 * c(2) : (c(k - 1) - c(k + 1)) / (2.0 * k));
  double at_a = 0.0;
  for (Eigen::Index k = 1; k <= n; ++k) at_a += (k % 2 ? -1.0 : 1.0) * out.coeffs[k];
  out.coeffs[0] = -at_a;
  return out;
}

ChebSeries ChebSeries::derivative() const {
  const Eigen::Index n = coeffs.size();
  ChebSeries out{a, b, Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 1, 1))};
  if (n < 2) return out;
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n + 1);
  for (Eigen::Index k = n - 1; k >= 1; --k) d[k - 1] = d[k + 1] + 2.0 * k * coeffs[k];
  d[0] *= 0.5;
  out.coeffs = d.head(n - 1) * (2.0 / (b - a));
  return out;
}

ChebSeries cheb_fit(const std::function<double(double)>& f, double a, double b, int n) {
  using std::numbers::pi;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = f(0.5 * (a + b) + 0.5 * (b - a) * std::cos(pi * (i + 0.5) / n));
  ChebSeries out{a, b, Eigen::VectorXd::Zero(n)};
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += v[i] * std::cos(pi * k * (i + 0.5) / n);
    out.coeffs[k] = (k ? 2.0 : 1.0) * acc / n;
  }
  return out;
}

ChebSeries double_primitive(const std::function<double(double)>& f, const Interval1D& iv, int n_cheb, double* tail) {
  if (n_cheb < 4) throw std::invalid_argument("double_primitive: need at least 4 coefficients");
  const ChebSeries fc = cheb_fit(f, iv.a, iv.b, n_cheb);
  if (!fc.coeffs.allFinite()) throw std::runtime_error("double_primitive: f is not finite on the interval");
  if (tail) {
    const double head = fc.coeffs.cwiseAbs().maxCoeff();
    *tail = head > 0.0 ? fc.coeffs.tail(3).cwiseAbs().maxCoeff() / head : 0.0;
  }
  return fc.integral().integral();
}

double Solution1D::u_eval(double x) const {
  if (!(x > interval.a && x < interval.b)) return 0.0;
  return std::pow(interval.d(x), s) * phi(x);
}

Solution1D solve_1d(const Problem1D& pb, int n) {
  if (n < 4) throw std::invalid_argument("solve_1d: need n >= 4");
  const Interval1D& iv = pb.interval;
  const double s = pb.s;
  const Eigen::VectorXd x = lobatto_points(n + 2, iv.a, iv.b);
  Solution1D sol;
  sol.interval = iv;
  sol.s = s;
  const ChebSeries P = double_primitive(pb.f, iv, std::max(2 * n, 64), &sol.rhs_tail);

  Eigen::MatrixXd A(n + 2, n + 2);
  A.leftCols(n) = coeff_C_s_1d(s) * singular_1d_weights(x, s, iv, n);
  A.col(n) = x;
  A.col(n + 1).setOnes();
  Eigen::VectorXd rhs(n + 2);
  for (int i = 0; i < n + 2; ++i) rhs[i] = P(x[i]);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  sol.rcond = lu.rcond();
  if (!(sol.rcond > 1e-15)) throw std::runtime_error("solve_1d: collocation matrix is singular");
  const Eigen::VectorXd z = lu.solve(rhs);
  sol.residual = (A * z - rhs).cwiseAbs().maxCoeff();
  sol.phi = ChebSeries{iv.a, iv.b, z.head(n)};
  sol.zeta1 = z[n];
  sol.zeta2 = z[n + 1];
  return sol;
}

}  // namespace fl
