#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fl/geometry.hpp"
#include "fl/interp.hpp"
#include "fl/quadrature.hpp"
#include "fl/special.hpp"

namespace fl {

namespace {

using std::numbers::pi;

struct Nodes {
  std::vector<double> t, c, w;
  void add(double t_, double c_, double w_) {
    t.push_back(t_);
    c.push_back(c_);
    w.push_back(w_);
  }
};

// Rule for int_0^L t^{l.power} (L-t)^{r.power} [log t] F(t) dt, resolving oscillations of
// wavelength ~ w: graded end pieces of width w, Gauss-Legendre panels of width <= w between.
Nodes piece_rule(double L, int n, const EndSpec& l, const EndSpec& r, double w) {
  Nodes out;
  if (L <= 2.0 * w) {
    const PanelRule p = graded_rule(L, n, l, r, 0.5 * w);
    for (Eigen::Index q = 0; q < p.size(); ++q) out.add(p.x[q], p.c[q], p.w[q]);
    return out;
  }
  auto left_factor = [&](double t) {
    double f = l.power != 0.0 ? std::pow(t, l.power) : 1.0;
    return l.log ? f * std::log(t) : f;
  };
  const PanelRule head = graded_rule(w, n, l, {}, 0.5 * w);
  for (Eigen::Index q = 0; q < head.size(); ++q) {
    const double c = L - head.x[q];
    out.add(head.x[q], c, head.w[q] * std::pow(c, r.power));
  }
  const int m = static_cast<int>(std::ceil((L - 2.0 * w) / w - 1e-12));
  const double hw = (L - 2.0 * w) / m;
  const Rule& g = jacobi01(n, 0.0, 0.0);
  for (int k = 0; k < m; ++k)
    for (Eigen::Index q = 0; q < g.x.size(); ++q) {
      const double t = w + hw * (k + g.x[q]), c = L - t;
      out.add(t, c, hw * g.w[q] * left_factor(t) * std::pow(c, r.power));
    }
  const PanelRule tail = graded_rule(w, n, {}, r, 0.5 * w);
  for (Eigen::Index q = 0; q < tail.size(); ++q) {
    const double t = L - w + tail.x[q];
    out.add(t, tail.c[q], tail.w[q] * left_factor(t));
  }
  return out;
}

}  // namespace

Eigen::MatrixXd singular_1d_weights(const Eigen::VectorXd& targets, double s, const Interval1D& iv, int basis_size) {
  if (basis_size < 1) throw std::invalid_argument("singular_1d_weights: empty basis");
  const bool half = is_half(s);
  const double h = 0.5 * iv.length(), mid = 0.5 * (iv.a + iv.b);
  const double w = std::min(0.5, 4.0 / basis_size);
  const int nq = 24;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(targets.size(), basis_size);
  std::vector<double> T(basis_size);

  for (Eigen::Index i = 0; i < targets.size(); ++i) {
    const double x = targets[i];
    if (!(x >= iv.a && x <= iv.b)) throw std::domain_error("singular_1d_weights: target outside the interval");
    const double xh = std::clamp((x - mid) / h, -1.0, 1.0);
    const double tx = x == iv.a ? pi : x == iv.b ? 0.0 : std::acos(xh);
    auto row = M.row(i);
    // sg = -1: theta = tx - t over [0, tx]; sg = +1: theta = tx + t over [0, pi - tx]
    for (int sg : {-1, 1}) {
      const double L = sg < 0 ? tx : pi - tx;
      if (L <= 0.0) continue;
      const bool touch = sg < 0 ? tx == pi : tx == 0.0;
      const double near_l = touch ? 0.0 : (sg < 0 ? pi - tx : tx);
      const double near_r = sg < 0 ? tx : pi - tx;
      // |cos th - cos tx| = e(t) t^{pk} (exactly), sin th = g(t,c) c (t^1 when touching)
      auto factors = [&](double t, double c, double& e, double& g) {
        const double r1 = 2.0 * std::sin(tx + sg * 0.5 * t);
        const double st = t > 0.0 ? std::sin(0.5 * t) / t : 0.5;
        e = touch ? (t > 0.0 ? 2.0 * std::sin(0.5 * t) / t : 1.0) * st : r1 * st;
        g = c > 0.0 ? std::sin(c) / c : 1.0;
        if (touch) g = t > 0.0 ? std::sin(t) / (t * c) : 1.0 / c;
      };
      auto accumulate = [&](const Nodes& nd, auto&& value) {
        for (std::size_t q = 0; q < nd.t.size(); ++q) {
          const double th = tx + sg * nd.t[q];
          cheb_basis(basis_size, -1.0, 1.0, std::cos(th), T.data());
          const double v = nd.w[q] * value(nd.t[q], nd.c[q]);
          for (int j = 0; j < basis_size; ++j) row[j] += v * T[j];
        }
      };
      if (!half) {
        const double pk = 1.0 - 2.0 * s, ps = 2.0 * s + 1.0;
        const Nodes nd = piece_rule(L, nq, {touch ? pk + pk + ps : pk, near_l, false}, {ps, near_r, false}, w);
        accumulate(nd, [&](double t, double c) {
          double e, g;
          factors(t, c, e, g);
          return std::pow(e, pk) * std::pow(g, ps);
        });
      } else {
        const double pl = touch ? 2.0 : 0.0, lc = touch ? 2.0 : 1.0;
        const Nodes lg = piece_rule(L, nq, {pl, near_l, true}, {2.0, near_r, false}, w);
        accumulate(lg, [&](double t, double c) {
          double e, g;
          factors(t, c, e, g);
          return lc * g * g;
        });
        const Nodes pn = piece_rule(L, nq, {pl, near_l, false}, {2.0, near_r, false}, w);
        accumulate(pn, [&](double t, double c) {
          double e, g;
          factors(t, c, e, g);
          return (std::log(h) + std::log(e)) * g * g;
        });
      }
    }
    row *= h * h;
    if (!row.allFinite())
      throw std::runtime_error("singular_1d_weights: non-finite weights at target " + std::to_string(i));
  }
  return M;
}

}  // namespace fl
