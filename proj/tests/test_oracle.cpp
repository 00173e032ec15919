#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fl/geometry.hpp"
#include "fl/oracle.hpp"

using namespace fl;

TEST_CASE("adaptive gauss-kronrod") {
  const OracleResult r = adaptive_gk15([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-13);
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(r.error < 1e-12);
  CHECK_THROWS_AS(adaptive_gk15([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-15, 3), std::runtime_error);
}

TEST_CASE("1d: half-power profile") {
  const Interval1D iv(-1.0, 1.0);
  auto u = [](double x) { return std::abs(x) < 1 ? std::sqrt(1 - x * x) : 0.0; };
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i < 20; ++i) {
    const double x = -0.95 + 0.1 * i;
    const double v = frac_lap_direct_1d(u, iv, x, 0.5).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK(hi - lo < 1e-8);
}

TEST_CASE("1d: general s and linearity") {
  const Interval1D iv(-1.0, 1.0);
  const double s = 0.3;
  auto u = [s](double x) { return std::abs(x) < 1 ? std::pow(1 - x * x, s) : 0.0; };
  auto v = [s](double x) { return std::abs(x) < 1 ? std::pow(1 - x * x, s) * x * x : 0.0; };
  CHECK(frac_lap_direct_1d(u, iv, 0.3, s).value == doctest::Approx(std::tgamma(2 * s + 1)).epsilon(1e-9));
  CHECK(frac_lap_direct_1d([](double) { return 0.0; }, iv, 0.3, s).value == 0.0);
  const double a = 2.0, b = -0.7, x = -0.45;
  const double lhs = frac_lap_direct_1d([&](double y) { return a * u(y) + b * v(y); }, iv, x, s).value;
  const double rhs = a * frac_lap_direct_1d(u, iv, x, s).value + b * frac_lap_direct_1d(v, iv, x, s).value;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  CHECK_THROWS_AS(frac_lap_direct_1d(u, iv, 1.0, s), std::domain_error);
}

TEST_CASE("1d: halving the tolerance stays within the error estimate") {
  const Interval1D iv(-1.0, 1.0);
  const double s = 0.75;
  auto u = [s](double x) { return std::abs(x) < 1 ? std::pow(1 - x * x, s) * std::cos(2 * x) : 0.0; };
  OracleConfig c1, c2;
  c1.tolerance = 1e-10;
  c2.tolerance = 5e-11;
  const OracleResult r1 = frac_lap_direct_1d(u, iv, 0.6, s, c1), r2 = frac_lap_direct_1d(u, iv, 0.6, s, c2);
  CHECK(std::abs(r1.value - r2.value) <= std::max(r1.error, 1e-10 * std::abs(r1.value)));
}

TEST_CASE("2d radial: disc profile") {
  for (double s : {0.3, 0.5, 0.75}) {
    auto u = [s](double r) { return r < 1 ? std::pow(1 - r * r, s) : 0.0; };
    const double ref = std::pow(2.0, 2 * s) * std::pow(std::tgamma(1 + s), 2);
    for (double r : {0.0, 0.35, 0.8}) CHECK(frac_lap_radial_2d(u, 0.0, 1.0, r, s).value == doctest::Approx(ref).epsilon(1e-8));
  }
  CHECK(frac_lap_radial_2d([](double) { return 0.0; }, 0.0, 1.0, 0.5, 0.5).value == 0.0);
  CHECK_THROWS_AS(frac_lap_radial_2d([](double) { return 0.0; }, 0.5, 1.0, 0.2, 0.5), std::domain_error);
}
