#include <doctest.h>

#include <cmath>

#include "fl/oracle.hpp"
#include "fl/solver1d.hpp"
#include "fl/special.hpp"

using namespace fl;

TEST_CASE("chebyshev series") {
  const ChebSeries c = cheb_fit([](double x) { return std::exp(x); }, -1.0, 2.0, 24);
  CHECK(c(0.7) == doctest::Approx(std::exp(0.7)).epsilon(1e-14));
  CHECK(c.integral()(2.0) == doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-13));
  CHECK(c.integral()(-1.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(c.derivative()(1.5) == doctest::Approx(std::exp(1.5)).epsilon(1e-11));
}

TEST_CASE("double primitive") {
  const Interval1D iv(-1.0, 2.0);
  double tail = 1.0;
  const ChebSeries P = double_primitive([](double x) { return std::cos(x); }, iv, 32, &tail);
  // P'' = cos, P(a) = P'(a) = 0
  auto exact = [&](double x) { return -std::cos(x) + std::cos(iv.a) - std::sin(iv.a) * (x - iv.a); };
  for (double x : {-1.0, 0.0, 0.5, 2.0}) CHECK(P(x) == doctest::Approx(exact(x)).scale(1.0).epsilon(1e-14));
  CHECK(tail < 1e-14);
  CHECK_THROWS_AS(double_primitive([](double) { return 1.0; }, iv, 2), std::invalid_argument);
  CHECK_THROWS_AS(double_primitive([](double x) { return std::log(x - 0.5); }, Interval1D(0.0, 1.0), 8), std::runtime_error);
}

TEST_CASE("constant right-hand side gives constant phi") {
  // (-Delta)^s ((x-a)(b-x))_+^s = Gamma(2s+1) on any interval
  for (double s : {0.25, 0.5, 0.75}) {
    const Interval1D iv(-0.5, 1.5);
    const double f0 = std::tgamma(2 * s + 1);
    const Solution1D sol = solve_1d({iv, FractionalOrder(s), [f0](double) { return f0; }}, 16);
    double err = 0.0;
    for (int i = 0; i <= 20; ++i) err = std::max(err, std::abs(sol.phi_eval(-0.5 + 0.1 * i) - 1.0));
    CHECK(err < 1e-9);
    CHECK(sol.u_eval(0.5) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.u_eval(-0.5) == 0.0);
    CHECK(sol.u_eval(3.0) == 0.0);
    CHECK(sol.rcond > 1e-12);
  }
}

TEST_CASE("oracle-generated right-hand side") {
  const double s = 0.75;
  const Interval1D iv(-1.0, 1.0);
  auto u = [s](double x) { return std::abs(x) < 1 ? std::pow(1 - x * x, s) * (1 + 0.5 * x - x * x * x) : 0.0; };
  auto f = [&](double x) { return frac_lap_direct_1d(u, iv, x, s).value; };
  const Solution1D sol = solve_1d({iv, FractionalOrder(s), f}, 32);
  for (double x : {-0.9, -0.2, 0.4, 0.99}) CHECK(sol.u_eval(x) == doctest::Approx(u(x)).scale(1.0).epsilon(1e-7));
}

TEST_CASE("solve_1d arguments") {
  CHECK_THROWS_AS(solve_1d({Interval1D(0.0, 1.0), FractionalOrder(0.5), [](double) { return 1.0; }}, 3),
                  std::invalid_argument);
  CHECK_THROWS(Interval1D(1.0, 1.0));
}
