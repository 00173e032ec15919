#include "fl/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

#include "fl/quadrature.hpp"
#include "fl/special.hpp"

namespace fl {

using std::numbers::pi;

namespace {

constexpr std::array<double, 8> xk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                   0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = wk[7] * fc, g = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double v = f(c - h * xk[j]) + f(c + h * xk[j]);
    k += wk[j] * v;
    if (j % 2 == 1) g += wg[j / 2] * v;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

// int_0^delta h^{1-2s} g(h) dh for smooth g, with an error estimate from two orders
OracleResult jacobi_near(const std::function<double(double)>& g, double delta, double s) {
  auto run = [&](int n) {
    const Rule& r = jacobi01(n, 1.0 - 2.0 * s, 0.0);
    double acc = 0.0;
    for (Eigen::Index q = 0; q < r.x.size(); ++q) acc += r.w[q] * g(delta * r.x[q]);
    return acc * std::pow(delta, 2.0 - 2.0 * s);
  };
  const double lo = run(10), hi = run(14);
  return {hi, std::abs(hi - lo)};
}

}  // namespace

OracleResult adaptive_gk15(const std::function<double(double)>& f, double a, double b, double tol, int max_intervals) {
  if (!(b > a)) return {0.0, 0.0};
  std::priority_queue<Segment> q;
  Segment s0 = gk15(f, a, b);
  double total = s0.value, err = s0.error;
  q.push(s0);
  int count = 1;
  while (err > tol) {
    if (count >= max_intervals) throw std::runtime_error("adaptive quadrature: tolerance not met");
    const Segment s = q.top();
    q.pop();
    const double m = 0.5 * (s.a + s.b);
    const Segment l = gk15(f, s.a, m), r = gk15(f, m, s.b);
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    q.push(l);
    q.push(r);
    ++count;
  }
  // resum to avoid drift from the running updates
  double v = 0.0, e = 0.0;
  std::vector<Segment> all;
  while (!q.empty()) {
    all.push_back(q.top());
    q.pop();
  }
  std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& s : all) {
    v += s.value;
    e += s.error;
  }
  return {v, e};
}

OracleResult frac_lap_direct_1d(const std::function<double(double)>& u, const Interval1D& iv, double x, double s,
                                const OracleConfig& cfg) {
  if (!(x > iv.a && x < iv.b)) throw std::domain_error("frac_lap_direct_1d: x must lie inside the support");
  const double dist = std::min(x - iv.a, iv.b - x), delta = cfg.subtraction_radius * dist;
  const double ux = u(x);
  const double p = 1.0 + 2.0 * s;
  const OracleResult near =
      jacobi_near([&](double h) { return h > 0.0 ? (2.0 * ux - u(x + h) - u(x - h)) / (h * h) : 0.0; }, delta, s);
  const double scale = std::max(1.0, std::abs(ux)) * std::pow(delta, -2.0 * s);
  const double tol = cfg.tolerance * scale;
  const OracleResult left = adaptive_gk15([&](double y) { return (ux - u(y)) * std::pow(x - y, -p); }, iv.a,
                                          x - delta, 0.5 * tol, cfg.max_intervals);
  const OracleResult right = adaptive_gk15([&](double y) { return (ux - u(y)) * std::pow(y - x, -p); }, x + delta,
                                           iv.b, 0.5 * tol, cfg.max_intervals);
  const double tail = ux * (std::pow(iv.b - x, -2.0 * s) + std::pow(x - iv.a, -2.0 * s)) / (2.0 * s);
  const double c = coeff_c_ns(1, s);
  return {c * (near.value + left.value + right.value + tail), c * (near.error + left.error + right.error)};
}

OracleResult frac_lap_radial_2d(const std::function<double(double)>& u, double r_in, double r_out, double r, double s,
                                const OracleConfig& cfg) {
  if (!(r >= r_in && r < r_out) || (r_in > 0.0 && r == r_in))
    throw std::domain_error("frac_lap_radial_2d: r must lie inside the support");
  const double dist = std::min(r_out - r, r_in > 0.0 ? r - r_in : r_out - r), delta = cfg.subtraction_radius * dist;
  const double ux = u(r);
  auto radius = [&](double t, double phi) { return std::sqrt(r * r + t * t + 2.0 * r * t * std::cos(phi)); };
  auto inside = [&](double rho) { return rho >= r_in && rho <= r_out; };
  auto uval = [&](double rho) { return inside(rho) ? u(rho) : 0.0; };

  // circle mean near x by the trapezoid rule (analytic integrand for t < dist)
  auto mean_near = [&](double t) {
    const int n = 64;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += uval(radius(t, pi * (k + 0.5) / n));
    return acc / n;
  };
  const OracleResult near =
      jacobi_near([&](double t) { return t > 0.0 ? 2.0 * pi * (ux - mean_near(t)) / (t * t) : 0.0; }, delta, s);

  const double scale = std::max(1.0, std::abs(ux)) * std::pow(delta, -2.0 * s);
  const double tol = cfg.tolerance * scale;
  const double inner_tol = 0.1 * cfg.tolerance * std::max(1.0, std::abs(ux)) * s;
  // circle mean for t >= delta, split where the circle crosses the support boundary
  auto mean = [&](double t) {
    if (r == 0.0) return uval(t);
    std::vector<double> cuts{0.0, pi};
    for (double R : {r_in, r_out}) {
      if (R <= 0.0) continue;
      const double c = (R * R - r * r - t * t) / (2.0 * r * t);
      if (c > -1.0 && c < 1.0) cuts.push_back(std::acos(c));
    }
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double mid = radius(t, 0.5 * (cuts[k] + cuts[k + 1]));
      if (!inside(mid)) continue;
      acc += adaptive_gk15([&](double phi) { return uval(radius(t, phi)); }, cuts[k], cuts[k + 1],
                           inner_tol, cfg.max_intervals)
                 .value;
    }
    return acc / pi;
  };
  std::vector<double> tb{delta, r + r_out};
  for (double R : {r_in, r_out}) {
    if (R <= 0.0) continue;
    for (double t : {std::abs(R - r), R + r})
      if (t > delta && t < r + r_out) tb.push_back(t);
  }
  std::sort(tb.begin(), tb.end());
  tb.erase(std::unique(tb.begin(), tb.end()), tb.end());
  double far = 0.0, ferr = 0.0;
  for (std::size_t k = 0; k + 1 < tb.size(); ++k) {
    const OracleResult seg = adaptive_gk15([&](double t) { return std::pow(t, -1.0 - 2.0 * s) * mean(t); }, tb[k],
                                           tb[k + 1], tol / tb.size(), cfg.max_intervals);
    far += seg.value;
    ferr += seg.error;
  }
  const double c = coeff_c_ns(2, s);
  const double value = near.value + 2.0 * pi * (ux * std::pow(delta, -2.0 * s) / (2.0 * s) - far);
  return {c * value, c * (near.error + 2.0 * pi * ferr)};
}

}  // namespace fl
