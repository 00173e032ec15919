#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fl/geometry.hpp"
#include "fl/interp.hpp"
#include "fl/quadrature.hpp"
#include "fl/special.hpp"
#include "oracle_util.hpp"

using namespace fl;
using std::numbers::pi;

TEST_CASE("gauss-jacobi moments") {
  // int_{-1}^{1} (1-x)^a (1+x)^b x^k dx against tanh-sinh
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 0.0}, {-0.5, -0.5}, {0.75, 0.25}}) {
    const Rule r = gauss_jacobi_nodes(8, a, b);
    for (int k = 0; k < 16; ++k) {
      double q = 0.0;
      for (Eigen::Index i = 0; i < r.x.size(); ++i) q += r.w[i] * std::pow(r.x[i], k);
      const double ref = tanh_sinh(
          [&](double x, double dl, double dr) { return std::pow(dr, a) * std::pow(dl, b) * std::pow(x, k); }, -1.0,
          1.0);
      CHECK(q == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
    }
  }
  // Chebyshev weight: sum of weights is pi
  CHECK(gauss_jacobi_nodes(5, -0.5, -0.5).w.sum() == doctest::Approx(pi).epsilon(1e-14));
}

TEST_CASE("log rule on [0,1]") {
  const Rule& r = log01(10, 0.3);
  for (int k = 0; k < 20; ++k) {
    double q = 0.0;
    for (Eigen::Index i = 0; i < r.x.size(); ++i) q += r.w[i] * std::pow(r.x[i], k);
    // int_0^1 x^{a+k} (-log x) dx = 1/(a+k+1)^2
    CHECK(q == doctest::Approx(1.0 / std::pow(1.3 + k, 2)).epsilon(1e-13));
  }
}

TEST_CASE("graded rule with endpoint powers") {
  const double L = 2.0, p = -0.4, q = 0.6;
  const PanelRule r = graded_rule(L, 16, EndSpec{p, 0.0, false}, EndSpec{q, 0.0, false});
  double sum = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) sum += r.w[i] * std::cos(r.x[i]);
  const double ref = tanh_sinh(
      [&](double x, double dl, double dr) { return std::pow(dl, p) * std::pow(dr, q) * std::cos(x); }, 0.0, L);
  CHECK(sum == doctest::Approx(ref).epsilon(1e-12));
  CHECK((r.c + r.x).isApproxToConstant(L, 1e-14));
}

TEST_CASE("radial power rule") {
  // int_0^1 r^{1-2s} r^2 dr = 1/(4-2s)
  for (double s : {0.25, 0.5, 0.75}) {
    const PanelRule r = radial_power_rule(10, s, 1.0);
    CHECK((r.w.array() * r.x.array().square()).sum() == doctest::Approx(1.0 / (4.0 - 2.0 * s)).epsilon(1e-13));
  }
}

TEST_CASE("kress weights integrate log(4 sin^2) against trig polynomials") {
  // int_0^{2pi} log(4 sin^2((t-tau)/2)) cos(m tau) dtau = -2pi cos(m t)/|m|, and 0 for m = 0
  const int n = 32;
  const PeriodicLogRule R = kress_log_weights(n);
  for (int m : {0, 1, 3, 7, 15}) {
    for (int i : {0, 5, 17}) {
      const double t = 2 * pi * i / n;
      double q = 0.0;
      for (int j = 0; j < n; ++j) q += R(i, j) * std::cos(m * 2 * pi * j / n);
      const double ref = m == 0 ? 0.0 : -2 * pi * std::cos(m * t) / m;
      CHECK(q == doctest::Approx(ref).scale(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("chebyshev interpolation") {
  const ChebInterp I(12, -1.0, 2.0);
  Eigen::VectorXd f(12);
  for (int i = 0; i < 12; ++i) f[i] = std::pow(I.nodes()[i], 7) - I.nodes()[i];
  CHECK(I.eval(f, 0.3) == doctest::Approx(std::pow(0.3, 7) - 0.3).epsilon(1e-12));
  CHECK(I.eval(f, I.nodes()[4]) == doctest::Approx(f[4]).epsilon(1e-15));
  CHECK(fejer_weights(9, 0.0, 2.0).sum() == doctest::Approx(2.0).epsilon(1e-14));
  const Eigen::VectorXd lp = lobatto_points(5, 0.0, 1.0);
  CHECK(lp[0] == 0.0);
  CHECK(lp[4] == 1.0);
}

TEST_CASE("trigonometric interpolation") {
  const TrigInterp T(16);
  Eigen::VectorXd f(16);
  for (int j = 0; j < 16; ++j) f[j] = std::sin(3 * T.node(j)) + std::cos(5 * T.node(j));
  CHECK(T.eval(f, 0.77) == doctest::Approx(std::sin(3 * 0.77) + std::cos(5 * 0.77)).epsilon(1e-13));
}

TEST_CASE("singular 1d weights against tanh-sinh") {
  const Interval1D iv(-1.0, 2.0);
  const int nb = 12;
  Eigen::VectorXd xs(4);
  xs << -1.0, -0.3, 1.1, 2.0;
  for (double s : {0.25, 0.5, 0.75}) {
    const Eigen::MatrixXd M = singular_1d_weights(xs, s, iv, nb);
    for (int i = 0; i < xs.size(); ++i) {
      const double x = xs[i];
      for (int j : {0, 3, 11}) {
        // dist: |x - y|; the d factor uses the distances to a and b
        auto g = [&](double y, double dist, double da, double db) {
          double T[12];
          cheb_basis(nb, iv.a, iv.b, y, T);
          const double k = is_half(s) ? std::log(dist) : std::pow(dist, 1 - 2 * s);
          return k * std::pow(da * db, s) * T[j];
        };
        double ref = 0.0;
        if (x > iv.a)
          ref += tanh_sinh([&](double y, double dl, double dr) { return g(y, dr, dl, iv.b - y); }, iv.a, x);
        if (x < iv.b)
          ref += tanh_sinh([&](double y, double dl, double dr) { return g(y, dl, y - iv.a, dr); }, x, iv.b);
        CHECK(M(i, j) == doctest::Approx(ref).scale(1.0).epsilon(1e-11));
      }
    }
  }
  CHECK_THROWS_AS(singular_1d_weights(Eigen::VectorXd::Constant(1, 3.0), 0.5, iv, 4), std::domain_error);
}
