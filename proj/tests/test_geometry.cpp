#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fl/geometry.hpp"

using namespace fl;
using std::numbers::pi;

TEST_CASE("disc") {
  const Domain d = make_disc(2.0);
  CHECK(d->d_eval({0.0, 0.0}) == doctest::Approx(4.0));
  CHECK(d->d_eval({1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(d->contains({1.9, 0.0}));
  CHECK_FALSE(d->contains({2.1, 0.0}));
  CHECK(d->n_h() == 0);
  CHECK(d->area() == doctest::Approx(4.0 * pi).epsilon(1e-13));
  const Vector2d x(0.3, -1.2);
  const Vector2d r = d->to_reference(x);
  CHECK((d->map(r[0], r[1]) - x).norm() < 1e-14);
  CHECK(d->d_ref(r[0], r[1]) == doctest::Approx(d->d_eval(x)).epsilon(1e-13));
  const Vector2d g = d->d_grad(x);
  CHECK((g + 2.0 * x).norm() < 1e-14);
}

TEST_CASE("kite level set and parametrization") {
  const Domain k = make_kite();
  CHECK(kite_g({0.0, 0.0}) == 0.0);
  CHECK(k->d_eval({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(k->contains({0.0, 0.0}));
  const auto& c = k->curves()[0];
  for (int j = 0; j < 64; ++j) {
    const double t = 2 * pi * j / 64;
    const Vector2d p = c.position(t);
    CHECK(std::abs(kite_g(p) - 1.0) < 1e-12);
    CHECK((p - kite_curve(t)).norm() < 1e-14);
    // gradient against central differences of g
    const double h = 1e-6;
    const Vector2d fd((kite_g(p + Vector2d(h, 0)) - kite_g(p - Vector2d(h, 0))) / (2 * h),
                      (kite_g(p + Vector2d(0, h)) - kite_g(p - Vector2d(0, h))) / (2 * h));
    const Vector2d gd = k->d_grad(p);
    CHECK(gd.norm() > 0.1);
    CHECK((gd + fd).norm() < 1e-6);
    // outward normal
    CHECK(c.normal(t).dot(fd) > 0.0);
  }
  // derivative of the curve against differences
  const double t = 1.1, h = 1e-5;
  CHECK((c.derivative(t) - (c.position(t + h) - c.position(t - h)) / (2 * h)).norm() < 1e-8);
  CHECK((c.second_derivative(t) - (c.derivative(t + h) - c.derivative(t - h)) / (2 * h)).norm() < 1e-8);
  const Vector2d x(-0.7, 0.4);
  const Vector2d r = k->to_reference(x);
  CHECK((k->map(r[0], r[1]) - x).norm() < 1e-12);
  CHECK(k->d_ref(r[0], r[1]) == doctest::Approx(k->d_eval(x)).epsilon(1e-12));
}

TEST_CASE("annulus") {
  const Domain a = make_annulus(0.5, 1.0);
  CHECK(a->n_h() == 1);
  CHECK(a->contains({0.75, 0.0}));
  CHECK_FALSE(a->contains({0.1, 0.0}));
  CHECK_FALSE(a->contains({1.1, 0.0}));
  CHECK(a->area() == doctest::Approx(0.75 * pi).epsilon(1e-13));
  CHECK(a->d_eval({0.75, 0.0}) > 0.0);
  CHECK(a->d_eval({1.0, 0.0}) == doctest::Approx(0.0).scale(1.0));
  CHECK(a->d_eval({0.0, 0.5}) == doctest::Approx(0.0).scale(1.0));
  // hole normal points out of the domain, toward the origin
  const auto& hole = a->curves()[1];
  CHECK(hole.normal(0.0).x() == doctest::Approx(-1.0));
  CHECK(a->curves()[0].normal(0.0).x() == doctest::Approx(1.0));
}

TEST_CASE("d scaling") {
  const Domain d1 = make_disc(1.0), d2 = make_disc(1.0, 2.0);
  CHECK(d2->d_eval({0.2, 0.1}) == doctest::Approx(2.0 * d1->d_eval({0.2, 0.1})));
}

TEST_CASE("volume grid") {
  const Domain d = make_disc(1.0);
  const VolumeGrid g = make_grid(*d, 6, 8);
  CHECK(g.size() == 48);
  CHECK(g.weights.sum() == doctest::Approx(pi).epsilon(1e-12));
  // no node at the coordinate singularity or on the boundary
  CHECK(g.rho.minCoeff() > 0.0);
  CHECK(g.rho.maxCoeff() < 1.0);
  Eigen::VectorXd v(g.size());
  for (int k = 0; k < g.size(); ++k) v[k] = g.nodes(0, k) * g.nodes(1, k);
  CHECK(g.interpolate(v, 0.4, 0.9) == doctest::Approx(0.16 * std::cos(0.9) * std::sin(0.9)).epsilon(1e-12));
  CHECK_THROWS_AS(make_grid(*d, 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(*d, 4, 7), std::invalid_argument);
}

TEST_CASE("boundary nodes") {
  const Domain d = make_disc(2.0);
  const auto nodes = boundary_nodes(d->curves()[0], 16);
  REQUIRE(nodes.size() == 16);
  for (const auto& n : nodes) {
    CHECK(n.curvature == doctest::Approx(0.5));
    CHECK(n.speed == doctest::Approx(2.0));
    CHECK((n.normal - n.position / 2.0).norm() < 1e-14);
  }
}
