#pragma once

#include <functional>

#include "fl/geometry.hpp"

namespace fl {

struct OracleConfig {
  double subtraction_radius = 0.1;  // delta as a fraction of the distance to the boundary
  double tolerance = 1e-12;         // relative to the size of the terms summed
  int max_intervals = 4000;         // per adaptive integral
};

struct OracleResult {
  double value = 0.0;
  double error = 0.0;  // estimate
};

// Adaptive Gauss-Kronrod 7/15 to absolute tolerance tol; throws when max_intervals is exhausted.
OracleResult adaptive_gk15(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_intervals = 4000);

// (-Delta)^s u(x) for u supported in the interval, from the hypersingular integral.
OracleResult frac_lap_direct_1d(const std::function<double(double)>& u, const Interval1D& support, double x, double s,
                                const OracleConfig& cfg = {});

// Same for radial u(|x|) supported in r_inner <= |x| <= r_outer (r_inner = 0 for a disc), at |x| = r.
OracleResult frac_lap_radial_2d(const std::function<double(double)>& u_radial, double r_inner, double r_outer,
                                double r, double s, const OracleConfig& cfg = {});

}  // namespace fl
