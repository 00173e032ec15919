#pragma once

#include <cmath>
#include <functional>
#include <numbers>

// Test-side tanh-sinh quadrature, independent of the library rules. f(x, x - a, b - x) gets the
// distances to both ends without cancellation, so endpoint singularities are resolved.
inline double tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b, int levels = 7) {
  using std::numbers::pi;
  const double r = 0.5 * (b - a);
  auto term = [&](double t) {
    const double u = 0.5 * pi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    const double gap = 2.0 * r * e / (1.0 + e);  // distance from the nearer end
    const double w = 0.5 * pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (gap < 1e-300) return 0.0;
    double acc = w * f(b - gap, b - a - gap, gap);
    if (t != 0.0) acc += w * f(a + gap, gap, b - a - gap);
    return acc;
  };
  const double tmax = 4.0;
  double h = 1.0, sum = 0.0;
  for (double t = 0.0; t <= tmax; t += h) sum += term(t);
  sum *= h;
  for (int l = 1; l <= levels; ++l) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= tmax; t += 2.0 * h) add += term(t);
    sum = 0.5 * sum + h * add;
  }
  return r * sum;
}

inline double tanh_sinh(const std::function<double(double)>& f, double a, double b, int levels = 7) {
  return tanh_sinh([&](double x, double, double) { return f(x); }, a, b, levels);
}
