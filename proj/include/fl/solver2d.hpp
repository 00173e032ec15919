#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fl/geometry.hpp"
#include "fl/potentials.hpp"
#include "fl/special.hpp"
#include "fl/volume_quad.hpp"

namespace fl {

struct Problem2D {
  Domain domain;
  FractionalOrder s;
  std::function<double(const Vector2d&)> f;
};

struct Resolution2D {
  int nr = 16, nt = 32;
  int nb = 0;  // boundary nodes per curve, 0 means nt
  VolumeQuadOptions quad;
  int boundary_nodes() const { return nb > 0 ? nb : nt; }
};

// Unknowns [phi (N_v), zeta (N_b), a (n_h)]; rows: volume nodes, boundary nodes, one gauge row per hole.
struct LinearSystem2D {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  int nv = 0, nb = 0, nh = 0;
  HoleBasis holes;
  int size() const { return nv + nb + nh; }
};

LinearSystem2D assemble_2d(const Problem2D& problem, const VolumeGrid& grid, const BoundaryDiscretization& bd,
                           const VolumeQuadOptions& quad = {});

struct Solution2D {
  Domain domain;
  double s = 0.5;
  VolumeGrid grid;
  BoundaryDiscretization boundary;
  Eigen::VectorXd phi, zeta, a;
  HoleBasis holes;
  double rcond = 0.0, residual = 0.0;

  // unknowns counted in the convergence tables: volume plus boundary
  int N() const { return static_cast<int>(phi.size() + zeta.size()); }
  double phi_eval(const Vector2d& x) const;
  double u_eval(const Vector2d& x) const;  // d^s phi inside, 0 outside
  Eigen::VectorXd u_nodes() const;          // u at the volume nodes
};

Solution2D solve_2d(const Problem2D& problem, const Resolution2D& res);

struct CompositionReport {
  std::vector<Vector2d> targets;
  Eigen::VectorXd lhs, f;   // C Delta_h F_s[phi] and f at the targets
  double max_rel_residual = 0.0;
};

// C_{2,s} times the finite-difference Laplacian (fourth order, step h) of int u(y)|x-y|^{-2s} dy with
// u = d^s phi, compared with f. phi may be empty, in which case phi = u / d^s.
CompositionReport verify_composition(const std::function<double(const Vector2d&)>& u_exact,
                                     const std::function<double(const Vector2d&)>& phi_exact,
                                     const std::function<double(const Vector2d&)>& f, const DomainGeometry& domain,
                                     double s, const std::vector<Vector2d>& targets, double h = 1e-2,
                                     const VolumeQuadOptions& quad = {});

}  // namespace fl
