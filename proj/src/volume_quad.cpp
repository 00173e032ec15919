#include "fl/volume_quad.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fl/quadrature.hpp"

namespace fl {

namespace {

using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Composite rule on [0,L] refined toward a complex singularity at c + i im.
PanelRule rule_near_root(double L, int n, EndSpec left, EndSpec right, double c, double im, double max_panel) {
  if (!(im > 0.0) || !std::isfinite(c) || !std::isfinite(im)) return graded_rule(L, n, left, right, max_panel);
  auto tighten = [](EndSpec& e, double d) { e.near = e.near > 0.0 ? std::min(e.near, d) : d; };
  if (c <= im) {
    tighten(left, std::hypot(std::max(c, 0.0), im));
    return graded_rule(L, n, left, right, max_panel);
  }
  if (c >= L - im) {
    tighten(right, std::hypot(std::max(L - c, 0.0), im));
    return graded_rule(L, n, left, right, max_panel);
  }
  const PanelRule a = graded_rule(c, n, left, EndSpec{0.0, im}, max_panel);
  const PanelRule b = graded_rule(L - c, n, EndSpec{0.0, im}, right, max_panel);
  PanelRule out;
  out.x.resize(a.size() + b.size());
  out.c.resize(out.x.size());
  out.w.resize(out.x.size());
  out.x << a.x, (b.x.array() + c).matrix();
  out.c << (a.c.array() + (L - c)).matrix(), b.c;
  out.w << a.w, b.w;
  return out;
}

// Widest panel of n nodes for an integrand oscillating at frequency k.
double band_cap(double cap, double band, int n, double k) {
  return band > 0.0 && k > 0.0 ? std::min(cap, band * n / k) : cap;
}

// The domain is split into four target-cornered rectangles in reference coordinates,
// each cut into two Duffy triangles.  Triangle 1 ends on the far rho edge and produces
// lines of constant rho; triangle 2 ends on the far theta edge (half a turn away) and
// produces lines of constant theta.  kt, kr: highest theta frequency and rho degree of psi
// (0 when psi is not an interpolant).
template <class Sink>
void trace(const DomainGeometry& dom, RefPoint x, double s, Kernel kernel, const VolumeQuadOptions& opt, double kt,
           double kr, Sink& sink) {
  const bool riesz = kernel == Kernel::riesz_power;
  const double Lt = pi;
  Vector2d yr, yt;
  dom.tangents(x.rho, x.theta, yr, yt);
  const double ar2 = yr.squaredNorm(), at2 = yt.squaredNorm();
  const double skew = yr.dot(yt), area = std::abs(yr.x() * yt.y() - yr.y() * yt.x());
  std::vector<double> pos, coef, dr, dt;
  std::vector<DomainGeometry::Sample> smp;

  // parts: riesz has one; log splits into log(v) and log(|y-x|/v)
  const int nparts = riesz ? 1 : 2;

  if (x.rho == 0.0 && !dom.zero_at_zero()) {
    // target at the pole of the map: y - x = rho X(theta), plain polar integration
    const int nth = std::max(4 * opt.ni, static_cast<int>(std::ceil(4.0 * kt)));
    const bool far = riesz && dom.zero_at_one();
    for (int part = 0; part < nparts; ++part) {
      const bool logpart = !riesz && part == 0;
      const PanelRule rr = graded_rule(1.0, opt.nv, EndSpec{riesz ? 1.0 - 2.0 * s : 1.0, 0.0, logpart},
                                       EndSpec{far ? s : 0.0, 0.0}, band_cap(opt.v_panel, opt.band, opt.nv, 2.0 * kr));
      pos.resize(rr.size());
      coef.resize(rr.size());
      for (int j = 0; j < nth; ++j) {
        const double th = 2.0 * pi * j / nth;
        for (Eigen::Index b = 0; b < rr.size(); ++b) {
          const double r = rr.x[b];
          const auto q = dom.sample(0.0, 0.0, r, th);
          double c = rr.w[b] * (2.0 * pi / nth) * q.jacobian / r;
          if (riesz) {
            c *= std::pow(q.d_factor * r * r / q.offset.squaredNorm(), s);
          } else {
            c /= 2.0 * pi;
            if (!logpart) c *= std::log(q.offset.norm() / r);
          }
          pos[b] = r;
          coef[b] = c;
        }
        sink.theta_line(th, pos, coef);
      }
    }
    return;
  }
  for (int sr = 1; sr >= -1; sr -= 2) {
    const double Lr = sr > 0 ? 1.0 - x.rho : x.rho;
    if (!(Lr > 0.0)) continue;
    const bool far = riesz && (sr > 0 ? dom.zero_at_one() : dom.zero_at_zero());
    const bool near = riesz && (sr > 0 ? dom.zero_at_zero() : dom.zero_at_one());
    const double delta = sr > 0 ? x.rho : 1.0 - x.rho;
    const bool touch = near && delta == 0.0;
    const double kexp = riesz ? 1.0 - 2.0 * s : 1.0;
    const double vcap = band_cap(opt.v_panel, opt.band, opt.nv, kt * Lt + 2.0 * kr * Lr);

    // near zeros of |y - x| / v in the cross variable, from the tangents at the target
    const double sgn = sr;  // times st below
    auto tau_rule = [&](int st) {
      const double f = Lr / at2;
      return rule_near_root(Lt, opt.ni, {}, {}, -sgn * st * skew * f, area * f,
                            band_cap(opt.i_panel * Lt, opt.band, opt.ni, kt));
    };
    EndSpec sleft{touch ? s : 0.0, (near && delta > 0.0) ? delta : 0.0};
    // the far corner (v, sigma) = (1, Lr) is singular; each theta line grades toward it
    auto sigma_rule = [&](int st, double v) {
      const double f = Lt / ar2;
      const double nearc = far ? std::max(opt.corner, (1.0 - v) / v) * Lr : 0.0;
      return rule_near_root(Lr, opt.ni, sleft, EndSpec{0.0, nearc}, -sgn * st * skew * f, area * f,
                            band_cap(opt.i_panel * Lr, opt.band, opt.ni, 2.0 * kr));
    };
    const PanelRule sig_p = sigma_rule(1, 1.0), sig_m = sigma_rule(-1, 1.0);
    const PanelRule tau_p = tau_rule(1), tau_m = tau_rule(-1);

    for (int part = 0; part < nparts; ++part) {
      const bool logpart = !riesz && part == 0;
      const EndSpec vl{kexp + (touch ? s : 0.0), (near && delta > 0.0) ? delta / Lr : 0.0, logpart};
      const PanelRule v1 = graded_rule(1.0, opt.nv, vl, EndSpec{far ? s : 0.0, 0.0}, vcap);
      const PanelRule v2 = graded_rule(1.0, opt.nv, vl, EndSpec{0.0, far ? opt.corner : 0.0}, vcap);

      for (int st = 1; st >= -1; st -= 2) {
        const PanelRule& tau = st > 0 ? tau_p : tau_m;
        // triangle 1: (drho, dth) = (v Lr, v tau)
        for (Eigen::Index a = 0; a < v1.size(); ++a) {
          const double v = v1.x[a];
          const double drho = sr * v * Lr, rho = x.rho + drho;
          double g0 = v1.w[a] * Lr;
          if (riesz) {
            double f = 1.0;
            if (far) f *= Lr;
            if (near) f *= touch ? Lr : delta + v * Lr;
            g0 *= std::pow(f, s);
          } else {
            g0 /= 2.0 * pi;
          }
          const int n = static_cast<int>(tau.size());
          pos.resize(n);
          coef.resize(n);
          dr.assign(n, drho);
          dt.resize(n);
          smp.resize(n);
          for (int b = 0; b < n; ++b) dt[b] = st * v * tau.x[b];
          dom.sample_line(x.rho, x.theta, n, dr.data(), dt.data(), smp.data());
          for (int b = 0; b < n; ++b) {
            const double th = x.theta + dt[b];
            const auto& q = smp[b];
            double c = g0 * tau.w[b] * q.jacobian;
            if (riesz) {
              const double r = q.offset.norm() / v;
              c *= std::pow(q.d_factor / (r * r), s);
            } else if (!logpart) {
              c *= std::log(q.offset.norm() / v);
            }
            pos[b] = th;
            coef[b] = c;
          }
          sink.rho_line(rho, pos, coef);
        }
        // triangle 2: (drho, dth) = (v sigma, v Lt)
        for (Eigen::Index a = 0; a < v2.size(); ++a) {
          const double v = v2.x[a], cv = v2.c[a];
          const double dth = st * v * Lt, th = x.theta + dth;
          const double g0 = v2.w[a] * Lt / (riesz ? 1.0 : 2.0 * pi);
          const PanelRule sigv = far ? sigma_rule(st, v) : PanelRule{};
          const PanelRule& sig = far ? sigv : (st > 0 ? sig_p : sig_m);
          const int n = static_cast<int>(sig.size());
          pos.resize(n);
          coef.resize(n);
          dr.resize(n);
          dt.assign(n, dth);
          smp.resize(n);
          for (int b = 0; b < n; ++b) dr[b] = sr * v * sig.x[b];
          dom.sample_line(x.rho, x.theta, n, dr.data(), dt.data(), smp.data());
          for (int b = 0; b < n; ++b) {
            const double sg = sig.x[b];
            const double rho = x.rho + dr[b];
            const auto& q = smp[b];
            double c = g0 * sig.w[b] * q.jacobian;
            if (riesz) {
              const double r = q.offset.norm() / v;
              double f = q.d_factor / (r * r);
              if (far) f *= sig.c[b] + sg * cv;
              if (near && !touch) f *= delta + v * sg;
              c *= std::pow(f, s);
            } else if (!logpart) {
              c *= std::log(q.offset.norm() / v);
            }
            pos[b] = rho;
            coef[b] = c;
          }
          sink.theta_line(th, pos, coef);
        }
      }
    }
  }
}

// Lines are accumulated in Chebyshev x Fourier coefficient space and synthesized once.
struct RowSink {
  const VolumeGrid& g;
  std::vector<double> A, Bt;  // nr x M and (nt + 2) x M, column major
  int M = 0;

  int nb() const { return g.th_interp.coeff_size(); }
  void grow() {
    A.resize(size_t(M + 1) * g.nr, 0.0);
    Bt.resize(size_t(M + 1) * nb(), 0.0);
  }
  void rho_line(double rho, const std::vector<double>& th, const std::vector<double>& c) {
    grow();
    const double one = 1.0;
    g.rho_interp.basis_sum(1, &rho, &one, &A[size_t(M) * g.nr]);
    g.th_interp.basis_sum(static_cast<int>(th.size()), th.data(), c.data(), &Bt[size_t(M) * nb()]);
    ++M;
  }
  void theta_line(double th, const std::vector<double>& rho, const std::vector<double>& c) {
    grow();
    const double one = 1.0;
    g.rho_interp.basis_sum(static_cast<int>(rho.size()), rho.data(), c.data(), &A[size_t(M) * g.nr]);
    g.th_interp.basis_sum(1, &th, &one, &Bt[size_t(M) * nb()]);
    ++M;
  }
  Eigen::MatrixXd weights() const {
    Eigen::Map<const Eigen::MatrixXd> Am(A.data(), g.nr, M);
    Eigen::Map<const Eigen::MatrixXd> Bm(Bt.data(), nb(), M);
    const Eigen::MatrixXd K = Am * Bm.transpose();
    return g.rho_interp.synthesis() * K * g.th_interp.synthesis().transpose();
  }
};

struct CallableSink {
  const DomainGeometry& dom;
  const std::function<double(const Vector2d&)>& psi;
  double sum = 0.0;
  void rho_line(double rho, const std::vector<double>& th, const std::vector<double>& c) {
    for (size_t q = 0; q < th.size(); ++q) sum += c[q] * psi(dom.map(rho, th[q]));
  }
  void theta_line(double th, const std::vector<double>& rho, const std::vector<double>& c) {
    for (size_t q = 0; q < rho.size(); ++q) sum += c[q] * psi(dom.map(rho[q], th));
  }
};

void check(RefPoint x, double s, Kernel k) {
  if (!(x.rho >= 0.0 && x.rho <= 1.0)) throw std::domain_error("volumetric_singular_quad: target outside closure");
  if (k == Kernel::riesz_power && !(s > 0.0 && s < 1.0)) throw std::domain_error("volumetric_singular_quad: s must lie in (0,1)");
}

}  // namespace

Eigen::VectorXd volumetric_singular_quad(const DomainGeometry& domain, const VolumeGrid& grid, RefPoint target,
                                         double s, Kernel kernel, const VolumeQuadOptions& opt) {
  check(target, s, kernel);
  RowSink sink{grid, {}, {}, 0};
  trace(domain, target, s, kernel, opt, 0.5 * grid.nt, grid.nr, sink);
  Eigen::MatrixXd W = sink.weights();
  Eigen::VectorXd row = Eigen::Map<Eigen::VectorXd>(W.data(), W.size());
  if (!row.allFinite()) throw std::runtime_error("volumetric_singular_quad: non-finite weights");
  return row;
}

double volume_integral(const DomainGeometry& domain, RefPoint target, double s, Kernel kernel,
                       const std::function<double(const Vector2d&)>& psi, const VolumeQuadOptions& opt) {
  check(target, s, kernel);
  CallableSink sink{domain, psi};
  trace(domain, target, s, kernel, opt, 0.0, 0.0, sink);
  if (!std::isfinite(sink.sum)) throw std::runtime_error("volume_integral: non-finite result");
  return sink.sum;
}

}  // namespace fl
