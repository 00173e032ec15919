#include <doctest.h>

#include <cmath>

#include "fl/manufactured.hpp"
#include "fl/solver2d.hpp"

using namespace fl;

namespace {

double max_err(const Solution2D& sol, const Field2D& u) {
  double e = 0.0;
  const Eigen::VectorXd un = sol.u_nodes();
  for (int k = 0; k < sol.grid.size(); ++k) e = std::max(e, std::abs(un[k] - u(sol.grid.nodes.col(k))));
  return e;
}

Resolution2D res(int nr, int nt, int nb = 0) {
  Resolution2D r;
  r.nr = nr;
  r.nt = nt;
  r.nb = nb;
  return r;
}

}  // namespace

TEST_CASE("system layout") {
  const Domain disc = make_disc(1.0);
  const VolumeGrid g = make_grid(*disc, 3, 8);
  const auto bd = discretize_boundary(disc->curves(), 8);
  const LinearSystem2D sys = assemble_2d({disc, FractionalOrder(0.5), [](const Vector2d&) { return 1.0; }}, g, bd);
  CHECK(sys.A.rows() == 24 + 8);
  CHECK(sys.A.cols() == 32);
  CHECK(sys.nh == 0);

  const Domain ann = make_annulus(0.5, 1.0);
  const VolumeGrid ga = make_grid(*ann, 4, 8);
  const auto ba = discretize_boundary(ann->curves(), 32);
  const LinearSystem2D sa = assemble_2d({ann, FractionalOrder(0.75), [](const Vector2d&) { return 1.0; }}, ga, ba);
  CHECK(sa.A.rows() == 32 + 64 + 1);
  CHECK(sa.A.cols() == 32 + 64 + 1);
  CHECK(sa.nh == 1);
  CHECK(sa.holes.residual <= 1e-10);
}

TEST_CASE("zero right-hand side") {
  const Solution2D sol = solve_2d({make_kite(), FractionalOrder(0.4), [](const Vector2d&) { return 0.0; }}, res(4, 16, 16));
  CHECK(sol.phi.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sol.zeta.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sol.N() == 64 + 16);
}

TEST_CASE("disc family") {
  const JacobiFamilySpec spec{0.5, 2, g_disc, "disc"};
  const Field2D u = disc_exact_u(spec);
  const Solution2D sol = solve_2d({make_disc(1.0), FractionalOrder(0.5), family_rhs(spec)}, res(5, 8));
  CHECK(max_err(sol, u) < 1e-10);
  CHECK(sol.u_eval({0.3, -0.2}) == doctest::Approx(u({0.3, -0.2})).epsilon(1e-10));
  CHECK(sol.u_eval({1.2, 0.0}) == 0.0);
  CHECK(sol.residual < 1e-12);

  // d-independence: scaling d by 2 scales phi by 2^{-s}
  const Solution2D sol2 = solve_2d({make_disc(1.0, 2.0), FractionalOrder(0.5), family_rhs(spec)}, res(5, 8));
  CHECK((sol2.u_nodes() - sol.u_nodes()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((sol2.phi - sol.phi / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("family with s = 3/4, k = 1") {
  const JacobiFamilySpec spec{0.75, 1, g_disc, "disc"};
  const Solution2D sol = solve_2d({make_disc(1.0), FractionalOrder(0.75), family_rhs(spec)}, res(6, 8));
  CHECK(max_err(sol, disc_exact_u(spec)) < 1e-9);
}

TEST_CASE("annulus gauge and symmetry") {
  const JacobiFamilySpec spec{0.75, 3, g_annulus, "annulus"};
  const Solution2D sol = solve_2d({make_annulus(0.5, 1.0), FractionalOrder(0.75), family_rhs(spec)}, res(12, 8, 48));
  REQUIRE(sol.a.size() == 1);
  double gauge = 0.0;
  for (int k = 0; k < sol.boundary.size(); ++k)
    if (sol.boundary.curve[k] == 1) gauge += sol.boundary.weights[k] * sol.zeta[k];
  CHECK(std::abs(gauge) < 1e-12);
  // radial symmetry of u
  const Eigen::VectorXd u = sol.u_nodes();
  for (int i = 0; i < sol.grid.nr; ++i)
    for (int j = 1; j < sol.grid.nt; ++j) CHECK(std::abs(u[sol.grid.index(i, j)] - u[sol.grid.index(i, 0)]) < 1e-10);
}

TEST_CASE("composition identity on the disc") {
  const JacobiFamilySpec spec{0.5, 1, g_disc, "disc"};
  const Domain d = make_disc(1.0);
  const std::vector<Vector2d> t{{0.1, 0.2}, {-0.5, 0.1}};
  const CompositionReport rep = verify_composition(disc_exact_u(spec), {}, family_rhs(spec), *d, 0.5, t);
  CHECK(rep.max_rel_residual < 1e-5);
  CHECK_THROWS_AS(verify_composition(disc_exact_u(spec), {}, family_rhs(spec), *d, 0.5, {{0.999, 0.0}}),
                  std::domain_error);
}

TEST_CASE("solve_2d arguments") {
  CHECK_THROWS_AS(solve_2d({nullptr, FractionalOrder(0.5), [](const Vector2d&) { return 1.0; }}, res(3, 8)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      solve_2d({make_disc(1.0), FractionalOrder(0.5), [](const Vector2d&) { return std::nan(""); }}, res(3, 8)),
      std::runtime_error);
}
