#include <doctest.h>

#include <cmath>

#include "fl/geometry.hpp"
#include "fl/manufactured.hpp"

using namespace fl;

TEST_CASE("jacobi family") {
  // f at g = 0: 2^{2s} Gamma(s+k+1)^2/(k!)^2 (-1)^k P_k^{(s,0)}(-1), and P_k^{(s,0)}(-1) = (-1)^k
  const Field2D f = family_rhs({0.5, 2, g_disc, "disc"});
  CHECK(f({0.0, 0.0}) == doctest::Approx(std::pow(std::tgamma(3.5), 2) / 2).epsilon(1e-14));
  const Field2D f0 = family_rhs({0.75, 0, g_disc, "disc"});
  CHECK(f0({0.3, 0.1}) == doctest::Approx(std::pow(2.0, 1.5) * std::pow(std::tgamma(1.75), 2)).epsilon(1e-14));
  const Field2D u = disc_exact_u({0.5, 3, g_disc, "disc"});
  CHECK(u({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(u({1.0, 0.0}) == 0.0);
  CHECK(u({0.8, 0.9}) == 0.0);
  CHECK_THROWS_AS(disc_exact_u({0.5, 1, g_annulus, "annulus"}), std::invalid_argument);
  CHECK_THROWS_AS(family_rhs({0.5, -1, g_disc, "disc"}), std::invalid_argument);
  CHECK_THROWS_AS(family_rhs({0.5, 1, nullptr, "disc"}), std::invalid_argument);
  CHECK(g_annulus({0.5, 0.0}) == doctest::Approx(0.0).scale(1.0));
  CHECK(g_annulus({0.0, 1.0}) == doctest::Approx(1.0));
  CHECK(interval_family_u(0.3, 0)(0.0) == 1.0);
}

TEST_CASE("error metrics") {
  Eigen::VectorXd u(3), r(3);
  u << 1.0, 2.1, -0.5;
  r << 1.0, 2.0, -0.4;
  const ErrorMetrics m = error_metrics(u, r);
  CHECK(m.eps_inf == doctest::Approx(0.05));
  CHECK(m.eps_rms == doctest::Approx(std::sqrt(0.02 / 3)));
  CHECK_THROWS_AS(error_metrics(u, Eigen::VectorXd::Zero(3)), std::domain_error);
  CHECK_THROWS_AS(error_metrics(u, Eigen::VectorXd::Ones(2)), std::invalid_argument);
}

TEST_CASE("numerical order of convergence") {
  // N = 96, 145 with eps 2.70e-1, 2.00e-2 gives noc 12.6
  CHECK(noc(96, 2.70e-1, 145, 2.00e-2) == doctest::Approx(12.6).epsilon(0.005));
  ConvergenceReport rep;
  rep.add(96, 2.70e-1, 7.57e-2, 0.29);
  rep.add(145, 2.00e-2, 5.74e-3, 0.457);
  CHECK_FALSE(rep.rows[0].noc.has_value());
  REQUIRE(rep.rows[1].noc.has_value());
  CHECK(*rep.rows[1].noc == doctest::Approx(12.6).epsilon(0.005));
  CHECK_THROWS_AS(rep.add(145, 1e-3, 1e-3, 1.0), std::invalid_argument);
}
