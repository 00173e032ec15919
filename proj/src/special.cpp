#include "fl/special.hpp"

#include <cmath>
#include <numbers>

namespace fl {

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("gamma_fn: pole at non-positive integer");
  return std::tgamma(x);
}

double coeff_c_ns(int n, double s) {
  if (n != 1 && n != 2) throw std::domain_error("coeff_c_ns: dimension must be 1 or 2");
  using std::numbers::pi;
  return std::pow(2.0, 2.0 * s) * s * gamma_fn(s + 0.5 * n) /
         (std::pow(pi, 0.5 * n) * gamma_fn(1.0 - s));
}

double coeff_C_ns(int n, double s) {
  if (n != 2) throw std::domain_error("coeff_C_ns: only n = 2 is supported");
  using std::numbers::pi;
  // Gamma(s + n/2 - 1) = Gamma(s) for n = 2
  return -gamma_fn(s + 0.5 * n - 1.0) * gamma_fn(s) * std::sin(pi * s) /
         (std::pow(4.0, 1.0 - s) * std::pow(pi, 0.5 * n + 1.0));
}

double coeff_C_s_1d(double s) {
  using std::numbers::pi;
  if (is_half(s)) return 1.0 / pi;
  return -gamma_fn(2.0 * s - 1.0) * std::sin(pi * s) / pi;
}

}  // namespace fl
