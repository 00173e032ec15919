#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fl/interp.hpp"

namespace fl {

using Eigen::Vector2d;

struct Interval1D {
  double a, b;
  Interval1D(double a_, double b_);
  double d(double y) const { return (y - a) * (b - y); }
  double length() const { return b - a; }
};

enum class Orientation { outer, hole };

// 2 pi periodic, counter-clockwise parametrization; the normal is flipped for holes
// so that it always points out of the domain.
struct BoundaryCurve {
  std::function<Vector2d(double)> position, derivative, second_derivative;
  Orientation orientation = Orientation::outer;
  double rho_ref = 1.0;  // reference radial coordinate of this curve in the volume map

  double sign() const { return orientation == Orientation::outer ? 1.0 : -1.0; }
  Vector2d normal(double t) const;
  double speed(double t) const { return derivative(t).norm(); }
  // signed curvature of the counter-clockwise parametrization
  double curvature(double t) const;
};

struct BoundaryNode {
  double t;
  Vector2d position, normal;
  double curvature, speed;
};

std::vector<BoundaryNode> boundary_nodes(const BoundaryCurve& curve, int n);

// Smooth domain described by a global map (rho, theta) in [0,1] x [0, 2 pi) -> Omega.
// d factors as (1 - rho)^{e1} rho^{e0} h(rho, theta) with h smooth and positive.
class DomainGeometry {
 public:
  virtual ~DomainGeometry() = default;

  virtual Vector2d map(double rho, double th) const = 0;
  virtual double jacobian(double rho, double th) const = 0;
  // y - x for y = map(rho + drho, th + dth), x = map(rho, th), free of cancellation
  virtual Vector2d offset(double rho, double th, double drho, double dth) const = 0;
  // d map / d rho and d map / d theta
  virtual void tangents(double rho, double th, Vector2d& y_rho, Vector2d& y_th) const = 0;
  void metric(double rho, double th, double& a_rho, double& a_th) const;
  virtual Vector2d to_reference(const Vector2d& x) const = 0;
  virtual double d_factor(double rho, double th) const = 0;  // h, including d_scale
  virtual double d_eval(const Vector2d& x) const = 0;
  virtual Vector2d d_grad(const Vector2d& x) const = 0;

  // offset, jacobian and d_factor at (rho + drho, th + dth) in one call
  struct Sample {
    Vector2d offset;
    double jacobian, d_factor;
  };
  virtual Sample sample(double rho, double th, double drho, double dth) const {
    return {offset(rho, th, drho, dth), jacobian(rho + drho, th + dth), d_factor(rho + drho, th + dth)};
  }
  // sample() for n offsets from one target
  virtual void sample_line(double rho, double th, int n, const double* drho, const double* dth, Sample* out) const {
    for (int q = 0; q < n; ++q) out[q] = sample(rho, th, drho[q], dth[q]);
  }

  bool zero_at_one() const { return e1_; }
  bool zero_at_zero() const { return e0_; }
  double d_ref(double rho, double th) const;
  bool contains(const Vector2d& x) const;

  const std::vector<BoundaryCurve>& curves() const { return curves_; }
  int n_h() const { return static_cast<int>(curves_.size()) - 1; }
  double area() const;
  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  double d_scale() const { return d_scale_; }

 protected:
  std::vector<BoundaryCurve> curves_;
  bool e1_ = true, e0_ = false;
  double d_scale_ = 1.0;
  std::string name_;
  std::vector<double> params_;
};

using Domain = std::shared_ptr<const DomainGeometry>;

// d_scale multiplies the closed-form d; any positive value gives an admissible d.
Domain make_disc(double radius, double d_scale = 1.0);
Domain make_kite(double d_scale = 1.0);
Domain make_annulus(double r_inner, double r_outer, double d_scale = 1.0);

// Level-set function of the kite and the closed-form parametrization of g = 1.
double kite_g(const Vector2d& x);
Vector2d kite_curve(double t);

// Chebyshev (open) in rho times equispaced in theta; node k = j * nr + i.
struct VolumeGrid {
  int nr = 0, nt = 0;
  ChebInterp rho_interp;
  TrigInterp th_interp;
  Eigen::Matrix2Xd nodes;
  Eigen::VectorXd rho, theta, weights;
  std::vector<bool> near_boundary;

  int size() const { return nr * nt; }
  int index(int i, int j) const { return j * nr + i; }
  // interpolation weights over all nodes at reference point (rho, theta)
  Eigen::VectorXd interp_row(double rho, double th) const;
  double interpolate(const Eigen::VectorXd& values, double rho, double th) const;
};

VolumeGrid make_grid(const DomainGeometry& domain, int nr, int nt);

}  // namespace fl
