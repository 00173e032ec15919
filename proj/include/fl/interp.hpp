#pragma once

#include <Eigen/Dense>

namespace fl {

// Chebyshev points of the first kind on [a,b], ascending.
Eigen::VectorXd cheb_points(int n, double a = -1.0, double b = 1.0);
// Chebyshev-Lobatto points on [a,b], ascending.
Eigen::VectorXd lobatto_points(int n, double a = -1.0, double b = 1.0);
// Fejer (first rule) weights matching cheb_points.
Eigen::VectorXd fejer_weights(int n, double a = -1.0, double b = 1.0);

// Values T_0..T_{n-1} at x in [a,b].
template <typename Scalar>
void cheb_basis(int n, double a, double b, Scalar x, Scalar* out) {
  const Scalar t = (Scalar(2) * x - Scalar(a + b)) / Scalar(b - a);
  if (n > 0) out[0] = Scalar(1);
  if (n > 1) out[1] = t;
  for (int k = 2; k < n; ++k) out[k] = Scalar(2) * t * out[k - 1] - out[k - 2];
}

// Barycentric Lagrange interpolation on Chebyshev points of the first kind.
class ChebInterp {
 public:
  ChebInterp() = default;
  ChebInterp(int n, double a, double b);
  int size() const { return static_cast<int>(x_.size()); }
  const Eigen::VectorXd& nodes() const { return x_; }
  // out[i] = l_i(x)
  void weights(double x, double* out) const;
  // out[i] += c * l_i(x)
  void accumulate(double x, double c, double* out) const;
  double eval(const Eigen::Ref<const Eigen::VectorXd>& f, double x) const;

  // Coefficient space: out[k] = sum_q c_q T_k(x_q), and l_i(x) = sum_k synthesis(i,k) T_k(x).
  void basis_sum(int np, const double* x, const double* c, double* out) const;
  const Eigen::MatrixXd& synthesis() const { return syn_; }

 private:
  double a_ = -1.0, b_ = 1.0;
  Eigen::VectorXd x_, w_;
  Eigen::MatrixXd syn_;
};

// Trigonometric interpolation on theta_j = 2 pi j / n, n even.
class TrigInterp {
 public:
  TrigInterp() = default;
  explicit TrigInterp(int n);
  int size() const { return n_; }
  double node(int j) const;
  void weights(double theta, double* out) const;
  void accumulate(double theta, double c, double* out) const;
  double eval(const Eigen::Ref<const Eigen::VectorXd>& f, double theta) const;

  // Coefficient space of size n + 2: out = [sum_q c_q cos(k th_q)]_{k=0..n/2}, then the sines.
  int coeff_size() const { return n_ + 2; }
  void basis_sum(int np, const double* th, const double* c, double* out) const;
  const Eigen::MatrixXd& synthesis() const { return syn_; }

 private:
  int n_ = 0;
  Eigen::VectorXd sh_, ch_;  // sin, cos of theta_j / 2
  Eigen::MatrixXd syn_;
};

}  // namespace fl
