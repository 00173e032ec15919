#pragma once

#include <Eigen/Dense>

namespace fl {

struct Interval1D;

struct Rule {
  Eigen::VectorXd x, w;
};

// Gauss-Jacobi on [-1,1] with weight (1-x)^alpha (1+x)^beta.
Rule gauss_jacobi_nodes(int n, double alpha, double beta);
inline Rule gauss_legendre(int n) { return gauss_jacobi_nodes(n, 0.0, 0.0); }

// Cached rules on [0,1]: weight x^a (1-x)^b, and weight x^a (-log x).
const Rule& jacobi01(int n, double a, double b);
const Rule& log01(int n, double a);

// Behaviour of an integrand at one end of [0,L]:
// exact factor (distance)^power, optional log(distance) at the left end,
// and geometric refinement toward the end down to `near` (singularity just beyond).
struct EndSpec {
  double power = 0.0;
  double near = 0.0;
  bool log = false;
};

// Composite rule for  int_0^L x^{l.power} (L-x)^{r.power} [log x] F(x) dx  ~  sum w_i F(x_i).
// c holds L - x without cancellation.
struct PanelRule {
  Eigen::VectorXd x, c, w;
  Eigen::Index size() const { return x.size(); }
};

// max_panel > 0 caps the width of the unrefined middle panels.
PanelRule graded_rule(double L, int n, const EndSpec& left, const EndSpec& right = {}, double max_panel = 0.0);

// Rule exact for int_0^rmax r^{1-2s} p(r) dr.
inline PanelRule radial_power_rule(int n, double s, double rmax) {
  return graded_rule(rmax, n, EndSpec{1.0 - 2.0 * s, 0.0, false});
}

// Kress weights: int_0^{2pi} log(4 sin^2((t_i - tau)/2)) g(tau) dtau ~ sum_j R[(i-j) mod n] g(t_j).
struct PeriodicLogRule {
  int n = 0;
  Eigen::VectorXd R;
  double operator()(int i, int j) const { return R[((i - j) % n + n) % n]; }
};

PeriodicLogRule kress_log_weights(int n);

// M(i,j) = int_a^b K(x_i,y) d^s(y) T_j(y) dy, K = |x-y|^{1-2s}, or log|x-y| at s = 1/2,
// T_j mapped to [a,b].
Eigen::MatrixXd singular_1d_weights(const Eigen::VectorXd& targets, double s, const Interval1D& interval,
                                    int basis_size);

}  // namespace fl
