#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fl/geometry.hpp"
#include "fl/volume_quad.hpp"

using namespace fl;
using std::numbers::pi;

TEST_CASE("riesz kernel at the disc centre") {
  // int_disc (1-|y|^2)^s |y|^{-2s} dy = pi B(1-s, 1+s)
  const Domain d = make_disc(1.0);
  const double s = 0.25;
  const double v = volume_integral(*d, {0.0, 0.0}, s, Kernel::riesz_power, [](const Vector2d&) { return 1.0; });
  CHECK(v == doctest::Approx(pi * std::tgamma(1 - s) * std::tgamma(1 + s)).epsilon(1e-11));
  // s = 1/2: pi^2 / 2
  const double w = volume_integral(*d, {0.0, 0.0}, 0.5, Kernel::riesz_power, [](const Vector2d&) { return 1.0; });
  CHECK(w == doctest::Approx(pi * pi / 2).epsilon(1e-11));
}

TEST_CASE("log kernel at the disc centre") {
  const Domain d = make_disc(1.0);
  const double v = volume_integral(*d, {0.0, 0.0}, 0.5, Kernel::newtonian_log, [](const Vector2d&) { return 1.0; });
  CHECK(v == doctest::Approx(-0.25).epsilon(1e-12));
  const VolumeGrid g = make_grid(*d, 8, 8);
  const Eigen::VectorXd w = volumetric_singular_quad(*d, g, {0.3, 1.0}, 0.5, Kernel::newtonian_log);
  // V[1](x) = (|x|^2 - 1)/4 on the unit disc
  CHECK(w.sum() == doctest::Approx((0.09 - 1.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("grid weights reproduce direct integration") {
  const Domain k = make_kite();
  const VolumeGrid g = make_grid(*k, 16, 32);
  auto psi = [](const Vector2d& y) { return 1.0 + y.x() - 0.5 * y.y() * y.y(); };
  Eigen::VectorXd v(g.size());
  for (int q = 0; q < g.size(); ++q) v[q] = psi(g.nodes.col(q));
  for (RefPoint t : {RefPoint{0.5, 0.3}, RefPoint{0.97, 2.0}, RefPoint{1.0, 4.0}}) {
    const Eigen::VectorXd w = volumetric_singular_quad(*k, g, t, 0.75, Kernel::riesz_power);
    const double direct = volume_integral(*k, t, 0.75, Kernel::riesz_power, psi);
    CHECK(w.dot(v) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("band option resolves high angular modes") {
  // psi = rho^2 cos(20 theta) lies in the grid's interpolation space; the direct value uses fine panels
  const Domain d = make_disc(1.0);
  const VolumeGrid g = make_grid(*d, 8, 48);
  auto psi = [](const Vector2d& y) { return y.squaredNorm() * std::cos(20.0 * std::atan2(y.y(), y.x())); };
  Eigen::VectorXd v(g.size());
  for (int q = 0; q < g.size(); ++q) v[q] = psi(g.nodes.col(q));
  VolumeQuadOptions fine;
  fine.v_panel = 0.02;
  fine.i_panel = 0.01;
  VolumeQuadOptions banded;
  banded.band = 0.5;
  for (RefPoint t : {RefPoint{0.6, 0.3}, RefPoint{0.95, 1.0}}) {
    const double direct = volume_integral(*d, t, 0.5, Kernel::riesz_power, psi, fine);
    const Eigen::VectorXd w = volumetric_singular_quad(*d, g, t, 0.5, Kernel::riesz_power, banded);
    CHECK(w.dot(v) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("riesz kernel at a boundary target") {
  // F_{1/2}[1] at (1,0) on the unit disc. About e1, y = e1 + r(cos a, sin a) with R = -2 cos a and
  // d = r(R - r); the r^{-1} kernel cancels the Jacobian, int_0^R sqrt(r(R-r)) dr = pi R^2/8,
  // and integrating over a in (pi/2, 3pi/2) gives pi^2/4.
  const Domain d = make_disc(1.0);
  const double v = volume_integral(*d, {1.0, 0.0}, 0.5, Kernel::riesz_power, [](const Vector2d&) { return 1.0; });
  CHECK(v == doctest::Approx(pi * pi / 4).epsilon(1e-10));
}
