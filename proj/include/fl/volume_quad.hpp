#pragma once

#include <Eigen/Dense>
#include <functional>

#include "fl/geometry.hpp"

namespace fl {

// riesz_power: int d^s(y) psi(y) |x-y|^{-2s} dy;  newtonian_log: int (1/2pi) log|x-y| psi(y) dy
enum class Kernel { riesz_power, newtonian_log };

struct VolumeQuadOptions {
  int nv = 24;           // nodes per panel along Duffy rays
  int ni = 16;           // nodes per panel across rays
  double corner = 1e-3;  // refinement depth toward corners where d vanishes
  double v_panel = 0.5;  // widest panel along Duffy rays
  double i_panel = 0.25;  // widest panel across rays, relative to the triangle edge
  // grid weights only: panels shrink so that (interpolant frequency) x width <= band x nodes; 0 disables
  double band = 0.0;
};

struct RefPoint {
  double rho, theta;
};

// Weights over the grid nodes: sum_k w_k psi(node_k) ~ integral, psi interpolated on the grid.
Eigen::VectorXd volumetric_singular_quad(const DomainGeometry& domain, const VolumeGrid& grid, RefPoint target,
                                         double s, Kernel kernel, const VolumeQuadOptions& opt = {});

// Same integral with psi evaluated directly at the quadrature points.
double volume_integral(const DomainGeometry& domain, RefPoint target, double s, Kernel kernel,
                       const std::function<double(const Vector2d&)>& psi, const VolumeQuadOptions& opt = {});

}  // namespace fl
