#include "fl/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fl/parallel.hpp"
#include "fl/quadrature.hpp"

namespace fl {

using std::numbers::pi;

BoundaryDiscretization discretize_boundary(const std::vector<BoundaryCurve>& curves, int n_per_curve) {
  BoundaryDiscretization bd;
  bd.n_per_curve = n_per_curve;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    auto nodes = boundary_nodes(curves[c], n_per_curve);
    bd.nodes.insert(bd.nodes.end(), nodes.begin(), nodes.end());
    bd.curve.insert(bd.curve.end(), nodes.size(), static_cast<int>(c));
  }
  const int N = bd.size();
  bd.weights.resize(N);
  bd.points.resize(2, N);
  for (int k = 0; k < N; ++k) {
    bd.weights[k] = bd.nodes[k].speed * 2.0 * pi / n_per_curve;
    bd.points.col(k) = bd.nodes[k].position;
  }
  return bd;
}

std::vector<RefPoint> boundary_ref_points(const std::vector<BoundaryCurve>& curves, int n_per_curve) {
  std::vector<RefPoint> out;
  for (const auto& c : curves)
    for (int j = 0; j < n_per_curve; ++j) out.push_back({c.rho_ref, 2.0 * pi * j / n_per_curve});
  return out;
}

namespace {

Eigen::Matrix2Xd ref_to_points(const DomainGeometry& domain, const std::vector<RefPoint>& targets) {
  Eigen::Matrix2Xd p(2, targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) p.col(i) = domain.map(targets[i].rho, targets[i].theta);
  return p;
}

DiscreteOperator assemble_volume(const DomainGeometry& domain, const VolumeGrid& grid,
                                 const std::vector<RefPoint>& targets, double s, Kernel kernel,
                                 const VolumeQuadOptions& opt, KernelTag tag) {
  DiscreteOperator op{Eigen::MatrixXd(targets.size(), grid.size()), ref_to_points(domain, targets), grid.nodes, tag};
  parallel_for(static_cast<int>(targets.size()), [&](int i) {
    op.matrix.row(i) = volumetric_singular_quad(domain, grid, targets[i], s, kernel, opt).transpose();
  });
  if (!op.matrix.allFinite()) throw std::runtime_error("volume operator has non-finite entries");
  return op;
}

enum class Layer { single, dbl };

double kernel(Layer L, const Vector2d& z, const Vector2d& y, const Vector2d& nu) {
  const Vector2d r = y - z;
  if (L == Layer::single) return std::log(r.norm()) / (2.0 * pi);
  return r.dot(nu) / (2.0 * pi * r.squaredNorm());
}

Vector2d normal_of(const BoundaryCurve& c, const Vector2d& d1) { return c.sign() * Vector2d(d1.y(), -d1.x()) / d1.norm(); }

double closest_t(const BoundaryCurve& c, const Vector2d& z, double t) {
  for (int it = 0; it < 50; ++it) {
    const Vector2d x = c.position(t) - z, d1 = c.derivative(t), d2 = c.second_derivative(t);
    const double g = x.dot(d1), gp = d1.squaredNorm() + x.dot(d2);
    double step = g / (gp > 0.0 ? gp : d1.squaredNorm());
    step = std::clamp(step, -0.2, 0.2);
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return t;
}

const Rule& gl16() {
  static const Rule r = gauss_legendre(16);
  return r;
}

// Offsets from the closest parameter covering one period: a central panel of half-width a0/2,
// then panels doubling in width up to pi/8.
void near_rule(double a0, std::vector<double>& u, std::vector<double>& w) {
  const Rule& g = gl16();
  auto panel = [&](double lo, double hi) {
    const double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
    for (Eigen::Index q = 0; q < g.x.size(); ++q) {
      u.push_back(m + h * g.x[q]);
      w.push_back(h * g.w[q]);
    }
  };
  u.clear();
  w.clear();
  double e = std::min(0.5 * a0, pi), width = a0;
  panel(-e, e);
  while (e < pi) {
    const double next = std::min(e + std::min(width, pi / 8.0), pi);
    panel(e, next);
    panel(-next, -e);
    e = next;
    width *= 2.0;
  }
}

DiscreteOperator assemble_domain(const std::vector<BoundaryCurve>& curves, int n, const Eigen::Matrix2Xd& targets,
                                 Layer L) {
  const BoundaryDiscretization bd = discretize_boundary(curves, n);
  const TrigInterp ti(n);
  std::vector<double> spacing(curves.size(), 0.0);
  for (int k = 0; k < bd.size(); ++k) spacing[bd.curve[k]] = std::max(spacing[bd.curve[k]], bd.weights[k]);

  DiscreteOperator op{Eigen::MatrixXd::Zero(targets.cols(), bd.size()), targets, bd.points,
                      L == Layer::single ? KernelTag::S_domain : KernelTag::D_domain};
  parallel_for(static_cast<int>(targets.cols()), [&](int i) {
    const Vector2d z = targets.col(i);
    std::vector<double> u, w, th, cq;
    Eigen::VectorXd coeff(ti.coeff_size());
    double gauss = 0.0;  // D[1](z): 1 inside, used as the interior check
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const BoundaryCurve& cv = curves[c];
      const int off = static_cast<int>(c) * n;
      int j0 = 0;
      double dmin = INFINITY;
      for (int j = 0; j < n; ++j) {
        const double dj = (bd.points.col(off + j) - z).norm();
        if (dj < dmin) dmin = dj, j0 = j;
      }
      if (dmin >= 5.0 * spacing[c]) {
        for (int j = 0; j < n; ++j) {
          const BoundaryNode& b = bd.nodes[off + j];
          op.matrix(i, off + j) = kernel(L, z, b.position, b.normal) * bd.weights[off + j];
          gauss += kernel(Layer::dbl, z, b.position, b.normal) * bd.weights[off + j];
        }
        continue;
      }
      const double ts = closest_t(cv, z, bd.nodes[off + j0].t);
      const Vector2d xs = cv.position(ts), ds = cv.derivative(ts);
      const double dist = (z - xs).norm();
      if (dist <= 1e-14 * (1.0 + z.norm()) || (z - xs).dot(normal_of(cv, ds)) >= 0.0)
        throw std::domain_error("layer potential target is not interior: (" + std::to_string(z.x()) + ", " +
                                std::to_string(z.y()) + ")");
      gauss += cv.orientation == Orientation::outer ? 1.0 : 0.0;
      near_rule(dist / ds.norm(), u, w);
      const int nq = static_cast<int>(u.size());
      th.resize(nq);
      cq.resize(nq);
      for (int q = 0; q < nq; ++q) {
        th[q] = ts + u[q];
        const Vector2d d1 = cv.derivative(th[q]);
        cq[q] = kernel(L, z, cv.position(th[q]), normal_of(cv, d1)) * d1.norm() * w[q];
      }
      ti.basis_sum(nq, th.data(), cq.data(), coeff.data());
      op.matrix.block(i, off, 1, n) = (ti.synthesis() * coeff).transpose();
    }
    if (std::abs(gauss - 1.0) > 0.25)
      throw std::domain_error("layer potential target is not interior: (" + std::to_string(z.x()) + ", " +
                              std::to_string(z.y()) + ")");
  });
  return op;
}

}  // namespace

DiscreteOperator assemble_V(const DomainGeometry& domain, const VolumeGrid& grid, const std::vector<RefPoint>& targets,
                            const VolumeQuadOptions& opt) {
  return assemble_volume(domain, grid, targets, 0.0, Kernel::newtonian_log, opt, KernelTag::V);
}

DiscreteOperator assemble_Fs(const DomainGeometry& domain, const VolumeGrid& grid,
                             const std::vector<RefPoint>& targets, double s, const VolumeQuadOptions& opt) {
  return assemble_volume(domain, grid, targets, s, Kernel::riesz_power, opt, KernelTag::Fs);
}

DiscreteOperator assemble_boundary_S(const std::vector<BoundaryCurve>& curves, int n) {
  const BoundaryDiscretization bd = discretize_boundary(curves, n);
  const PeriodicLogRule R = kress_log_weights(n);
  const int N = bd.size();
  DiscreteOperator op{Eigen::MatrixXd(N, N), bd.points, bd.points, KernelTag::S_boundary};
  for (int i = 0; i < N; ++i) {
    const BoundaryNode& x = bd.nodes[i];
    for (int j = 0; j < N; ++j) {
      const BoundaryNode& y = bd.nodes[j];
      if (bd.curve[i] != bd.curve[j]) {
        op.matrix(i, j) = std::log((x.position - y.position).norm()) / (2.0 * pi) * bd.weights[j];
        continue;
      }
      // log|x-y|^2 = log(4 sin^2((t-tau)/2)) + smooth remainder
      double smooth;
      if (i == j) {
        smooth = 2.0 * std::log(x.speed);
      } else {
        const double sn = std::sin(0.5 * (x.t - y.t));
        smooth = std::log((x.position - y.position).squaredNorm() / (4.0 * sn * sn));
      }
      op.matrix(i, j) = (R(i % n, j % n) + 2.0 * pi / n * smooth) * y.speed / (4.0 * pi);
    }
  }
  return op;
}

DiscreteOperator assemble_boundary_D(const std::vector<BoundaryCurve>& curves, int n) {
  const BoundaryDiscretization bd = discretize_boundary(curves, n);
  const int N = bd.size();
  DiscreteOperator op{Eigen::MatrixXd(N, N), bd.points, bd.points, KernelTag::D_boundary};
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const BoundaryNode& y = bd.nodes[j];
      const double k = i == j ? curves[bd.curve[j]].sign() * y.curvature / (4.0 * pi)
                              : kernel(Layer::dbl, bd.nodes[i].position, y.position, y.normal);
      op.matrix(i, j) = k * bd.weights[j];
    }
  }
  return op;
}

DiscreteOperator assemble_SL_domain(const std::vector<BoundaryCurve>& curves, int n, const Eigen::Matrix2Xd& targets) {
  return assemble_domain(curves, n, targets, Layer::single);
}

DiscreteOperator assemble_DL_domain(const std::vector<BoundaryCurve>& curves, int n, const Eigen::Matrix2Xd& targets) {
  return assemble_domain(curves, n, targets, Layer::dbl);
}

namespace {
int per_curve(const std::vector<BoundaryCurve>& curves, const Eigen::VectorXd& density) {
  if (curves.empty() || density.size() % curves.size())
    throw std::invalid_argument("density size does not match the boundary curves");
  return static_cast<int>(density.size() / curves.size());
}
}  // namespace

Eigen::VectorXd eval_SL_domain(const std::vector<BoundaryCurve>& curves, const Eigen::VectorXd& density,
                               const Eigen::Matrix2Xd& targets) {
  return assemble_SL_domain(curves, per_curve(curves, density), targets).matrix * density;
}

Eigen::VectorXd eval_DL_domain(const std::vector<BoundaryCurve>& curves, const Eigen::VectorXd& density,
                               const Eigen::Matrix2Xd& targets) {
  return assemble_DL_domain(curves, per_curve(curves, density), targets).matrix * density;
}

HoleBasis solve_hole_basis(const BoundaryDiscretization& bd, const Eigen::MatrixXd& S) {
  const int N = bd.size();
  const int nh = bd.curve.empty() ? 0 : bd.curve.back();
  HoleBasis hb;
  hb.beta.resize(N, nh);
  if (nh == 0) return hb;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(N, nh);
  for (int k = 0; k < N; ++k)
    if (bd.curve[k] > 0) rhs(k, bd.curve[k] - 1) = 1.0;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(S);
  hb.rcond = lu.rcond();
  if (hb.rcond >= 1e-8) {
    hb.beta = lu.solve(rhs);
  } else {
    // S beta + c = e_j with int beta = 0; c vanishes when e_j lies in the range of S
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N + 1, N + 1);
    A.topLeftCorner(N, N) = S;
    A.block(0, N, N, 1).setOnes();
    A.block(N, 0, 1, N) = bd.weights.transpose();
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(N + 1, nh);
    r.topRows(N) = rhs;
    hb.beta = A.partialPivLu().solve(r).topRows(N);
    hb.degenerate = true;
  }
  hb.residual = (S * hb.beta - rhs).cwiseAbs().maxCoeff();
  if (!(hb.residual <= 1e-3))
    throw std::runtime_error("single-layer system for the hole functions is singular (rcond " +
                             std::to_string(hb.rcond) + ", residual " + std::to_string(hb.residual) +
                             "); a boundary component has logarithmic capacity near 1, rescale the geometry");
  return hb;
}

HoleBasis solve_hole_basis(const std::vector<BoundaryCurve>& curves, int n) {
  return solve_hole_basis(discretize_boundary(curves, n), assemble_boundary_S(curves, n).matrix);
}

}  // namespace fl
