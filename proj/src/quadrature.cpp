#include "fl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "fl/special.hpp"

namespace fl {

namespace {

using Eigen::VectorXd;

// Golub-Welsch from recurrence coefficients (alpha_k, beta_k), beta_0 = total mass.
Rule golub_welsch(const VectorXd& a, const VectorXd& b) {
  const Eigen::Index n = a.size();
  Rule r;
  if (n == 1) {
    r.x = a;
    r.w = VectorXd::Constant(1, b[0]);
    return r;
  }
  VectorXd sub = b.segment(1, n - 1).cwiseSqrt();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(a, sub, Eigen::ComputeEigenvectors);
  r.x = es.eigenvalues();
  r.w = b[0] * es.eigenvectors().row(0).transpose().array().square();
  return r;
}

}  // namespace

Rule gauss_jacobi_nodes(int n, double alpha, double beta) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi_nodes: n must be positive");
  if (alpha <= -1.0 || beta <= -1.0) throw std::domain_error("gauss_jacobi_nodes: alpha, beta must exceed -1");
  const double ab = alpha + beta;
  VectorXd a(n), b(n);
  b[0] = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                  std::lgamma(ab + 2.0));
  a[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    a[k] = (beta * beta - alpha * alpha) / (c * (c + 2.0));
    if (k == 1)
      b[k] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      b[k] = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0));
  }
  Rule r = golub_welsch(a, b);

  // Newton polish of the nodes, weights from the closed form
  const double logc = (ab + 1.0) * std::log(2.0) + std::lgamma(n + alpha + 1.0) + std::lgamma(n + beta + 1.0) -
                      std::lgamma(n + ab + 1.0) - std::lgamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = r.x[i];
    double dp = 1.0;
    for (int it = 0; it < 3; ++it) {
      const double p = jacobi_p(n, alpha, beta, x);
      dp = 0.5 * (n + ab + 1.0) * jacobi_p(n - 1, alpha + 1.0, beta + 1.0, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    dp = 0.5 * (n + ab + 1.0) * jacobi_p(n - 1, alpha + 1.0, beta + 1.0, x);
    r.x[i] = x;
    r.w[i] = std::exp(logc) / ((1.0 - x) * (1.0 + x) * dp * dp);
  }
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int p, int q) { return r.x[p] < r.x[q]; });
  Rule out{VectorXd(n), VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    out.x[i] = r.x[idx[i]];
    out.w[i] = r.w[idx[i]];
  }
  return out;
}

namespace {

std::mutex cache_mutex;
std::map<std::tuple<int, double, double>, Rule> jacobi_cache;
std::map<std::pair<int, double>, Rule> log_cache;

Rule make_log01(int n, double a) {
  // discretize x^a (-log x) dx on dyadic pieces of [0,1], then Stieltjes
  const Rule& g = jacobi01(40, 0.0, 0.0);
  const int levels = 60;
  VectorXd X(levels * 40), W(levels * 40);
  for (int k = 0; k < levels; ++k) {
    const double hi = std::ldexp(1.0, -k), lo = 0.5 * hi;
    for (int i = 0; i < 40; ++i) {
      const double x = lo + (hi - lo) * g.x[i];
      X[k * 40 + i] = x;
      W[k * 40 + i] = (hi - lo) * g.w[i] * std::pow(x, a) * (-std::log(x));
    }
  }
  VectorXd al(n), be(n);
  be[0] = W.sum();
  VectorXd pm = VectorXd::Zero(X.size());
  VectorXd p = VectorXd::Constant(X.size(), 1.0 / std::sqrt(be[0]));
  for (int k = 0; k < n; ++k) {
    al[k] = (W.array() * X.array() * p.array().square()).sum();
    VectorXd q = (X.array() - al[k]) * p.array() - (k > 0 ? std::sqrt(be[k]) : 0.0) * pm.array();
    if (k + 1 < n) {
      be[k + 1] = (W.array() * q.array().square()).sum();
      pm = p;
      p = q / std::sqrt(be[k + 1]);
    }
  }
  return golub_welsch(al, be);
}

}  // namespace

const Rule& jacobi01(int n, double a, double b) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_tuple(n, a, b);
  auto it = jacobi_cache.find(key);
  if (it != jacobi_cache.end()) return it->second;
  Rule r = gauss_jacobi_nodes(n, b, a);
  r.x = (r.x.array() + 1.0) * 0.5;
  r.w *= std::pow(2.0, -(1.0 + a + b));
  return jacobi_cache.emplace(key, std::move(r)).first->second;
}

const Rule& log01(int n, double a) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = log_cache.find({n, a});
    if (it != log_cache.end()) return it->second;
  }
  Rule r = make_log01(n, a);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return log_cache.emplace(std::make_pair(n, a), std::move(r)).first->second;
}

constexpr int kGradedNodes = 12;

PanelRule graded_rule(double L, int n, const EndSpec& left, const EndSpec& right, double max_panel) {
  if (!(L > 0.0)) throw std::invalid_argument("graded_rule: empty interval");
  if (right.log) throw std::invalid_argument("graded_rule: log factor only supported at the left end");
  std::vector<double> bp{0.0};
  if (left.near > 0.0 && left.near < 0.25 * L)
    for (double h = left.near; h < 0.25 * L; h *= 2.0) bp.push_back(h);
  const int nl = static_cast<int>(bp.size()) - 1;
  std::vector<double> rp;
  if (right.near > 0.0 && right.near < 0.25 * L)
    for (double h = right.near; h < 0.25 * L; h *= 2.0) rp.push_back(h);
  const int nr = static_cast<int>(rp.size());
  const double gap = (rp.empty() ? L : L - rp.back()) - bp.back();
  const int split = max_panel > 0.0 ? static_cast<int>(std::ceil(gap / max_panel - 1e-12)) : 1;
  const double b0 = bp.back();
  for (int k = 1; k < split; ++k) bp.push_back(b0 + gap * k / split);
  for (auto it = rp.rbegin(); it != rp.rend(); ++it) bp.push_back(L - *it);
  bp.push_back(L);
  if (bp.size() == 2 && left.log && right.power != 0.0) bp = {0.0, 0.5 * L, L};
  const int m = static_cast<int>(bp.size()) - 1;
  std::vector<double> X, C, W;
  X.reserve(2 * n * m);
  C.reserve(2 * n * m);
  W.reserve(2 * n * m);
  auto tail = [&](int i, double x, double c) {
    // end factors not absorbed by this panel's rule
    double f = 1.0;
    if (i != 0) {
      if (left.power != 0.0) f *= std::pow(x, left.power);
      if (left.log) f *= std::log(x);
    }
    if (i != m - 1 && right.power != 0.0) f *= std::pow(c, right.power);
    return f;
  };
  for (int i = 0; i < m; ++i) {
    const double a = bp[i], b = bp[i + 1], h = b - a;
    const double pl = i == 0 ? left.power : 0.0;
    const double pr = i == m - 1 ? right.power : 0.0;
    // geometrically graded panels see the singularity at a fixed relative distance
    const int np = (i < nl || i >= m - nr) ? std::min(n, kGradedNodes) : n;
    const Rule& r = jacobi01(np, pl, pr);
    const double scale = std::pow(h, 1.0 + pl + pr);
    const bool logpanel = i == 0 && left.log;
    const double lh = logpanel ? std::log(h) : 1.0;
    if (!logpanel || lh != 0.0) {
      for (int k = 0; k < np; ++k) {
        const double x = a + h * r.x[k], c = (L - b) + h * (1.0 - r.x[k]);
        X.push_back(x);
        C.push_back(c);
        W.push_back(r.w[k] * scale * lh * tail(i, x, c));
      }
    }
    if (logpanel) {
      const Rule& q = log01(np, pl);
      const double sl = std::pow(h, 1.0 + pl);
      for (int k = 0; k < np; ++k) {
        const double x = a + h * q.x[k], c = (L - b) + h * (1.0 - q.x[k]);
        X.push_back(x);
        C.push_back(c);
        W.push_back(-q.w[k] * sl * tail(i, x, c));
      }
    }
  }
  PanelRule out;
  out.x = Eigen::Map<VectorXd>(X.data(), X.size());
  out.c = Eigen::Map<VectorXd>(C.data(), C.size());
  out.w = Eigen::Map<VectorXd>(W.data(), W.size());
  return out;
}

PeriodicLogRule kress_log_weights(int n) {
  if (n < 8 || n % 2) throw std::invalid_argument("kress_log_weights: n must be even and >= 8");
  using std::numbers::pi;
  PeriodicLogRule r;
  r.n = n;
  r.R.resize(n);
  const int h = n / 2;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * pi * k / n;
    double acc = 0.0;
    for (int m = 1; m < h; ++m) acc += std::cos(m * t) / m;
    r.R[k] = -4.0 * pi / n * acc - 4.0 * pi / (double(n) * n) * ((k % 2) ? -1.0 : 1.0);
  }
  return r;
}

}  // namespace fl
