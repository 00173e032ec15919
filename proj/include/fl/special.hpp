#pragma once

#include <stdexcept>

namespace fl {

// Order of the fractional Laplacian, 0 < s < 1.
struct FractionalOrder {
  double s;
  explicit FractionalOrder(double v) : s(v) {
    if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("fractional order must lie in (0,1)");
  }
  operator double() const { return s; }
};

// s = 1/2 switches the 1D kernel to log|x-y|.
constexpr double kHalfTol = 1e-12;
inline bool is_half(double s) { return s - 0.5 < kHalfTol && 0.5 - s < kHalfTol; }

double gamma_fn(double x);

// P_k^{(alpha,beta)}(x) by the three-term recurrence.
template <typename Scalar>
Scalar jacobi_p(int k, double alpha, double beta, Scalar x) {
  if (alpha <= -1.0 || beta <= -1.0) throw std::domain_error("jacobi_p: alpha, beta must exceed -1");
  if (k < 0) throw std::domain_error("jacobi_p: negative degree");
  Scalar p0 = Scalar(1);
  if (k == 0) return p0;
  const double ab = alpha + beta;
  Scalar p1 = Scalar(alpha + 1.0) + Scalar(0.5 * (ab + 2.0)) * (x - Scalar(1));
  for (int n = 2; n <= k; ++n) {
    const double c = 2.0 * n + ab;
    const double a1 = 2.0 * n * (n + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (c - 1.0) * c * (c - 2.0);
    const double a4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * c;
    Scalar p2 = ((Scalar(a2) + Scalar(a3) * x) * p1 - Scalar(a4) * p0) / Scalar(a1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// c_{n,s} of the hypersingular definition, n in {1,2}.
double coeff_c_ns(int n, double s);
// C_{n,s} of the composition formula, n = 2.
double coeff_C_ns(int n, double s);
// C_s of the 1D reformulation.
double coeff_C_s_1d(double s);

}  // namespace fl
