#pragma once

#include <Eigen/Dense>
#include <functional>

#include "fl/geometry.hpp"
#include "fl/special.hpp"

namespace fl {

// Chebyshev series on [a,b].
struct ChebSeries {
  double a = -1.0, b = 1.0;
  Eigen::VectorXd coeffs;

  double operator()(double x) const;
  ChebSeries integral() const;  // antiderivative vanishing at a
  ChebSeries derivative() const;
};

// Interpolant through n Chebyshev points of the first kind.
ChebSeries cheb_fit(const std::function<double(double)>& f, double a, double b, int n);

struct Problem1D {
  Interval1D interval;
  FractionalOrder s;
  std::function<double(double)> f;
};

struct Solution1D {
  Interval1D interval{-1.0, 1.0};
  double s = 0.5;
  ChebSeries phi;
  double zeta1 = 0.0, zeta2 = 0.0;
  double rcond = 0.0;
  double residual = 0.0;      // max collocation residual of the linear system
  double rhs_tail = 0.0;      // relative size of the trailing coefficients of P
  Eigen::VectorXd phi_coeffs() const { return phi.coeffs; }
  double phi_eval(double x) const { return phi(x); }
  double u_eval(double x) const;
};

// P'' = f with P(a) = P'(a) = 0. tail receives the relative size of the last coefficients of f.
ChebSeries double_primitive(const std::function<double(double)>& f, const Interval1D& interval, int n_cheb,
                            double* tail = nullptr);

Solution1D solve_1d(const Problem1D& problem, int n);

}  // namespace fl
