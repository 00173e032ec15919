#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fl/geometry.hpp"
#include "fl/volume_quad.hpp"

namespace fl {

enum class KernelTag { V, Fs, S_boundary, D_boundary, S_domain, D_domain };

struct DiscreteOperator {
  Eigen::MatrixXd matrix;
  Eigen::Matrix2Xd row_targets, col_sources;
  KernelTag kernel_tag;
};

// Nystrom nodes on every curve, curve after curve, t_j = 2 pi j / n.
struct BoundaryDiscretization {
  int n_per_curve = 0;
  std::vector<BoundaryNode> nodes;
  std::vector<int> curve;   // owning curve of each node
  Eigen::VectorXd weights;  // speed * 2 pi / n
  Eigen::Matrix2Xd points;

  int size() const { return static_cast<int>(nodes.size()); }
};

BoundaryDiscretization discretize_boundary(const std::vector<BoundaryCurve>& curves, int n_per_curve);
// Boundary nodes as reference points of the volume map.
std::vector<RefPoint> boundary_ref_points(const std::vector<BoundaryCurve>& curves, int n_per_curve);

DiscreteOperator assemble_V(const DomainGeometry& domain, const VolumeGrid& grid, const std::vector<RefPoint>& targets,
                            const VolumeQuadOptions& opt = {});
// Columns act on phi at the grid nodes; d^s is part of the weights.
DiscreteOperator assemble_Fs(const DomainGeometry& domain, const VolumeGrid& grid,
                             const std::vector<RefPoint>& targets, double s, const VolumeQuadOptions& opt = {});

// Interior-limit convention: D[1] = 1/2 on a single closed curve.
DiscreteOperator assemble_boundary_S(const std::vector<BoundaryCurve>& curves, int n_per_curve);
DiscreteOperator assemble_boundary_D(const std::vector<BoundaryCurve>& curves, int n_per_curve);

// Potentials at points of Omega as matrices over the boundary nodes. Targets closer than
// five node spacings get a panel rule refined toward the closest boundary point.
DiscreteOperator assemble_SL_domain(const std::vector<BoundaryCurve>& curves, int n_per_curve,
                                    const Eigen::Matrix2Xd& targets);
DiscreteOperator assemble_DL_domain(const std::vector<BoundaryCurve>& curves, int n_per_curve,
                                    const Eigen::Matrix2Xd& targets);
Eigen::VectorXd eval_SL_domain(const std::vector<BoundaryCurve>& curves, const Eigen::VectorXd& density,
                               const Eigen::Matrix2Xd& targets);
Eigen::VectorXd eval_DL_domain(const std::vector<BoundaryCurve>& curves, const Eigen::VectorXd& density,
                               const Eigen::Matrix2Xd& targets);

struct HoleBasis {
  Eigen::MatrixXd beta;  // boundary nodes x n_h
  double rcond = 1.0;
  double residual = 0.0;
  // S has a null vector (a component of logarithmic capacity 1). beta is then fixed by
  // int beta = 0; the null vector adds nothing to S[beta_j] on the closure of Omega.
  bool degenerate = false;
};

// Throws if S is singular and the indicator right-hand sides are clearly incompatible with it
// (residual above 1e-3); smaller residuals are discretization error and are reported.
HoleBasis solve_hole_basis(const std::vector<BoundaryCurve>& curves, int n_per_curve);
HoleBasis solve_hole_basis(const BoundaryDiscretization& bd, const Eigen::MatrixXd& S);

}  // namespace fl
