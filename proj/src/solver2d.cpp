#include "fl/solver2d.hpp"

#include <cmath>
#include <stdexcept>

#include "fl/parallel.hpp"

namespace fl {

LinearSystem2D assemble_2d(const Problem2D& pb, const VolumeGrid& grid, const BoundaryDiscretization& bd,
                           const VolumeQuadOptions& quad) {
  const DomainGeometry& dom = *pb.domain;
  const auto& curves = dom.curves();
  const double s = pb.s;
  LinearSystem2D sys;
  sys.nv = grid.size();
  sys.nb = bd.size();
  sys.nh = dom.n_h();
  const int nv = sys.nv, nb = sys.nb, nh = sys.nh, n = sys.size();

  std::vector<RefPoint> targets(nv);
  for (int k = 0; k < nv; ++k) targets[k] = {grid.rho[k], grid.theta[k]};
  const auto bref = boundary_ref_points(curves, bd.n_per_curve);
  targets.insert(targets.end(), bref.begin(), bref.end());

  Eigen::VectorXd fv(nv);
  for (int k = 0; k < nv; ++k) fv[k] = pb.f(grid.nodes.col(k));
  if (!fv.allFinite()) throw std::runtime_error("right-hand side is not finite at the volume nodes");

  sys.A = Eigen::MatrixXd::Zero(n, n);
  sys.b = Eigen::VectorXd::Zero(n);
  sys.b.head(nv + nb) = -(assemble_V(dom, grid, targets, quad).matrix * fv);
  sys.A.block(0, 0, nv + nb, nv) = -coeff_C_ns(2, s) * assemble_Fs(dom, grid, targets, s, quad).matrix;
  sys.A.block(0, nv, nv, nb) = assemble_DL_domain(curves, bd.n_per_curve, grid.nodes).matrix;
  sys.A.block(nv, nv, nb, nb) = assemble_boundary_D(curves, bd.n_per_curve).matrix;
  sys.A.block(nv, nv, nb, nb).diagonal().array() += 0.5;
  if (nh > 0) {
    const Eigen::MatrixXd S = assemble_boundary_S(curves, bd.n_per_curve).matrix;
    sys.holes = solve_hole_basis(bd, S);
    sys.A.block(0, nv + nb, nv, nh) = assemble_SL_domain(curves, bd.n_per_curve, grid.nodes).matrix * sys.holes.beta;
    sys.A.block(nv, nv + nb, nb, nh) = S * sys.holes.beta;
    for (int k = 0; k < nb; ++k)
      if (bd.curve[k] > 0) sys.A(nv + nb + bd.curve[k] - 1, nv + k) = bd.weights[k];
  }
  return sys;
}

double Solution2D::phi_eval(const Vector2d& x) const {
  const Vector2d r = domain->to_reference(x);
  return grid.interpolate(phi, r.x(), r.y());
}

double Solution2D::u_eval(const Vector2d& x) const {
  const double d = domain->d_eval(x);
  if (!(d > 0.0)) return 0.0;
  return std::pow(d, s) * phi_eval(x);
}

Eigen::VectorXd Solution2D::u_nodes() const {
  Eigen::VectorXd u(grid.size());
  for (int k = 0; k < grid.size(); ++k) u[k] = std::pow(domain->d_ref(grid.rho[k], grid.theta[k]), s) * phi[k];
  return u;
}

Solution2D solve_2d(const Problem2D& pb, const Resolution2D& res) {
  if (!pb.domain) throw std::invalid_argument("solve_2d: no domain");
  Solution2D sol;
  sol.domain = pb.domain;
  sol.s = pb.s;
  sol.grid = make_grid(*pb.domain, res.nr, res.nt);
  sol.boundary = discretize_boundary(pb.domain->curves(), res.boundary_nodes());
  const LinearSystem2D sys = assemble_2d(pb, sol.grid, sol.boundary, res.quad);
  if (!sys.A.allFinite()) throw std::runtime_error("solve_2d: system matrix has non-finite entries");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.A);
  sol.rcond = lu.rcond();
  if (!(sol.rcond > 1e-14)) throw std::runtime_error("solve_2d: system matrix is singular");
  const Eigen::VectorXd z = lu.solve(sys.b);
  sol.residual = (sys.A * z - sys.b).cwiseAbs().maxCoeff() / std::max(1.0, sys.b.cwiseAbs().maxCoeff());
  sol.phi = z.head(sys.nv);
  sol.zeta = z.segment(sys.nv, sys.nb);
  sol.a = z.tail(sys.nh);
  sol.holes = sys.holes;
  return sol;
}

CompositionReport verify_composition(const std::function<double(const Vector2d&)>& u_exact,
                                     const std::function<double(const Vector2d&)>& phi_exact,
                                     const std::function<double(const Vector2d&)>& f, const DomainGeometry& domain,
                                     double s, const std::vector<Vector2d>& targets, double h,
                                     const VolumeQuadOptions& quad) {
  if (!(h > 1e-6)) throw std::invalid_argument("verify_composition: finite-difference step too small");
  std::function<double(const Vector2d&)> phi = phi_exact;
  if (!phi)
    phi = [&](const Vector2d& y) {
      const double d = domain.d_eval(y);
      return d > 0.0 ? u_exact(y) / std::pow(d, s) : 0.0;
    };
  auto F = [&](const Vector2d& x) {
    if (!domain.contains(x)) throw std::domain_error("verify_composition: stencil leaves the domain");
    const Vector2d r = domain.to_reference(x);
    return volume_integral(domain, {r.x(), r.y()}, s, Kernel::riesz_power, phi, quad);
  };
  const int n = static_cast<int>(targets.size());
  CompositionReport rep;
  rep.targets = targets;
  rep.lhs.resize(n);
  rep.f.resize(n);
  const double c = coeff_C_ns(2, s);
  parallel_for(n, [&](int i) {
    const Vector2d x = targets[i];
    double lap = -60.0 * F(x);
    for (const Vector2d& e : {Vector2d(1, 0), Vector2d(0, 1)})
      lap += 16.0 * (F(x + h * e) + F(x - h * e)) - (F(x + 2 * h * e) + F(x - 2 * h * e));
    rep.lhs[i] = c * lap / (12.0 * h * h);
    rep.f[i] = f(x);
  });
  const double scale = std::max(rep.f.cwiseAbs().maxCoeff(), 1e-300);
  rep.max_rel_residual = n ? (rep.lhs - rep.f).cwiseAbs().maxCoeff() / scale : 0.0;
  return rep;
}

}  // namespace fl
