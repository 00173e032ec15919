#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fl/geometry.hpp"

namespace fl {

using Field2D = std::function<double(const Vector2d&)>;

struct JacobiFamilySpec {
  double s = 0.5;
  int k = 0;
  Field2D g;
  std::string domain_tag = "disc";
};

// g choices used with the family
double g_disc(const Vector2d& x);
double g_annulus(const Vector2d& x);  // (4|x|^2 - 1)/3

// f = 2^{2s} Gamma(s+k+1)^2/(k!)^2 (-1)^k P_k^{(s,0)}(2g - 1)
Field2D family_rhs(const JacobiFamilySpec& spec);
// u = (-1)^k (1-|x|^2)^s P_k^{(s,0)}(2|x|^2 - 1) on the unit disc, 0 outside
Field2D disc_exact_u(const JacobiFamilySpec& spec);
// 1D analogue of the family profile: (1-x^2)_+^s P_k^{(s,0)}(2x^2 - 1)
std::function<double(double)> interval_family_u(double s, int k);

struct ErrorMetrics {
  double eps_inf = 0.0, eps_rms = 0.0;
};

// eps_inf is relative to max|u_ref|; eps_rms is absolute.
ErrorMetrics error_metrics(const Eigen::VectorXd& u, const Eigen::VectorXd& u_ref);

struct ConvergenceRow {
  int N = 0;
  double eps_inf = 0.0, eps_rms = 0.0;
  std::optional<double> noc;
  double wall_time = 0.0;
};

double noc(int N1, double eps1, int N2, double eps2);
inline double noc(const ConvergenceRow& prev, const ConvergenceRow& row) {
  return noc(prev.N, prev.eps_inf, row.N, row.eps_inf);
}

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  // appends and fills noc from the previous row; N must increase
  void add(int N, double eps_inf, double eps_rms, double wall_time);
};

}  // namespace fl
