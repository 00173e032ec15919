#include "fl/interp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fl {

using Eigen::VectorXd;
using std::numbers::pi;

VectorXd cheb_points(int n, double a, double b) {
  VectorXd x(n);
  for (int k = 0; k < n; ++k) x[k] = 0.5 * (a + b) - 0.5 * (b - a) * std::cos((2.0 * k + 1.0) * pi / (2.0 * n));
  return x;
}

VectorXd lobatto_points(int n, double a, double b) {
  if (n < 2) throw std::invalid_argument("lobatto_points: need at least 2 points");
  VectorXd x(n);
  for (int k = 0; k < n; ++k) {
    // sin form keeps the symmetric pairs exact
    const double t = std::sin(pi * (2.0 * k - (n - 1)) / (2.0 * (n - 1)));
    x[k] = 0.5 * (a + b) + 0.5 * (b - a) * t;
  }
  x[0] = a;
  x[n - 1] = b;
  return x;
}

VectorXd fejer_weights(int n, double a, double b) {
  VectorXd w(n);
  for (int k = 0; k < n; ++k) {
    const double th = (2.0 * k + 1.0) * pi / (2.0 * n);
    double acc = 0.0;
    for (int j = 1; j <= n / 2; ++j) acc += std::cos(2.0 * j * th) / (4.0 * j * j - 1.0);
    w[k] = (2.0 / n) * (1.0 - 2.0 * acc) * 0.5 * (b - a);
  }
  return w;
}

ChebInterp::ChebInterp(int n, double a, double b) : a_(a), b_(b), x_(cheb_points(n, a, b)), w_(n), syn_(n, n) {
  for (int k = 0; k < n; ++k) w_[k] = ((k % 2) ? -1.0 : 1.0) * std::sin((2.0 * k + 1.0) * pi / (2.0 * n));
  // discrete orthogonality of T_k on the first-kind points
  for (int i = 0; i < n; ++i) {
    const double ti = -std::cos((2.0 * i + 1.0) * pi / (2.0 * n));
    for (int k = 0; k < n; ++k) syn_(i, k) = (k ? 2.0 : 1.0) / n * std::cos(k * std::acos(ti));
  }
}

void ChebInterp::basis_sum(int np, const double* x, const double* c, double* out) const {
  const int n = size();
  thread_local Eigen::ArrayXd t, p0, p1, p2;
  Eigen::Map<const Eigen::ArrayXd> X(x, np), C(c, np);
  t = (2.0 * X - (a_ + b_)) / (b_ - a_);
  p0 = C;
  out[0] = p0.sum();
  if (n == 1) return;
  p1 = C * t;
  out[1] = p1.sum();
  for (int k = 2; k < n; ++k) {
    p2 = 2.0 * t * p1 - p0;
    out[k] = p2.sum();
    p0.swap(p1);
    p1.swap(p2);
  }
}

void ChebInterp::weights(double x, double* out) const {
  const int n = size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = x - x_[i];
    if (d == 0.0) {
      for (int k = 0; k < n; ++k) out[k] = 0.0;
      out[i] = 1.0;
      return;
    }
    out[i] = w_[i] / d;
    sum += out[i];
  }
  const double inv = 1.0 / sum;
  for (int i = 0; i < n; ++i) out[i] *= inv;
}

void ChebInterp::accumulate(double x, double c, double* out) const {
  const int n = size();
  thread_local std::vector<double> tmp;
  tmp.resize(n);
  weights(x, tmp.data());
  for (int i = 0; i < n; ++i) out[i] += c * tmp[i];
}

double ChebInterp::eval(const Eigen::Ref<const VectorXd>& f, double x) const {
  thread_local std::vector<double> tmp;
  tmp.resize(size());
  weights(x, tmp.data());
  return Eigen::Map<const VectorXd>(tmp.data(), size()).dot(f);
}

TrigInterp::TrigInterp(int n) : n_(n), sh_(n), ch_(n), syn_(n, n + 2) {
  if (n < 2 || n % 2) throw std::invalid_argument("TrigInterp: n must be even");
  const int h = n / 2;
  syn_.setZero();
  for (int j = 0; j < n; ++j) {
    sh_[j] = std::sin(pi * j / n);
    ch_[j] = std::cos(pi * j / n);
    // l_j = (1/n) [1 + 2 sum_{0<k<n/2} cos k(th - th_j) + cos(n th / 2) cos(n th_j / 2)]
    for (int k = 0; k <= h; ++k) {
      const double tj = 2.0 * pi * j * k / n;
      const double f = (k == 0 || k == h) ? 1.0 / n : 2.0 / n;
      syn_(j, k) = f * std::cos(tj);
      if (k != 0 && k != h) syn_(j, h + 1 + k) = f * std::sin(tj);
    }
  }
}

void TrigInterp::basis_sum(int np, const double* th, const double* c, double* out) const {
  const int h = n_ / 2;
  thread_local Eigen::ArrayXd cs, sn, zr, zi, tmp;
  Eigen::Map<const Eigen::ArrayXd> T(th, np), C(c, np);
  cs = T.cos();
  sn = T.sin();
  // z_k = c e^{i k th} by repeated rotation
  zr = C;
  zi.setZero(np);
  for (int k = 0; k <= h; ++k) {
    out[k] = zr.sum();
    out[h + 1 + k] = zi.sum();
    tmp = zr * cs - zi * sn;
    zi = zr * sn + zi * cs;
    zr.swap(tmp);
  }
}

double TrigInterp::node(int j) const { return 2.0 * pi * j / n_; }

void TrigInterp::weights(double theta, double* out) const {
  const double s = std::sin(0.5 * theta), c = std::cos(0.5 * theta);
  double sum = 0.0;
  for (int j = 0; j < n_; ++j) {
    // (-1)^j cot((theta - theta_j)/2)
    const double sd = s * ch_[j] - c * sh_[j];
    if (sd == 0.0) {
      for (int k = 0; k < n_; ++k) out[k] = 0.0;
      out[j] = 1.0;
      return;
    }
    const double cd = c * ch_[j] + s * sh_[j];
    out[j] = (j % 2) ? -cd / sd : cd / sd;
    sum += out[j];
  }
  const double inv = 1.0 / sum;
  for (int j = 0; j < n_; ++j) out[j] *= inv;
}

void TrigInterp::accumulate(double theta, double c, double* out) const {
  thread_local std::vector<double> tmp;
  tmp.resize(n_);
  weights(theta, tmp.data());
  for (int j = 0; j < n_; ++j) out[j] += c * tmp[j];
}

double TrigInterp::eval(const Eigen::Ref<const VectorXd>& f, double theta) const {
  thread_local std::vector<double> tmp;
  tmp.resize(n_);
  weights(theta, tmp.data());
  return Eigen::Map<const VectorXd>(tmp.data(), n_).dot(f);
}

}  // namespace fl
