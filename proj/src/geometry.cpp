#include "fl/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fl {

using std::numbers::pi;

Interval1D::Interval1D(double a_, double b_) : a(a_), b(b_) {
  if (!(a < b)) throw std::invalid_argument("Interval1D: need a < b");
}

Vector2d BoundaryCurve::normal(double t) const {
  const Vector2d d = derivative(t);
  return sign() * Vector2d(d.y(), -d.x()) / d.norm();
}

double BoundaryCurve::curvature(double t) const {
  const Vector2d d = derivative(t), dd = second_derivative(t);
  return (d.x() * dd.y() - d.y() * dd.x()) / std::pow(d.norm(), 3);
}

std::vector<BoundaryNode> boundary_nodes(const BoundaryCurve& curve, int n) {
  if (n <= 0 || n % 2) throw std::invalid_argument("boundary_nodes: n must be even and positive");
  std::vector<BoundaryNode> out(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * pi * j / n;
    out[j] = {t, curve.position(t), curve.normal(t), curve.curvature(t), curve.speed(t)};
  }
  return out;
}

void DomainGeometry::metric(double rho, double th, double& a_rho, double& a_th) const {
  Vector2d yr, yt;
  tangents(rho, th, yr, yt);
  a_rho = yr.norm();
  a_th = yt.norm();
}

double DomainGeometry::d_ref(double rho, double th) const {
  double v = d_factor(rho, th);
  if (e1_) v *= 1.0 - rho;
  if (e0_) v *= rho;
  return v;
}

namespace {

double winding(const BoundaryCurve& c, const Vector2d& z) {
  const int n = 4096;
  Vector2d prev = c.position(0.0) - z;
  double acc = 0.0;
  for (int j = 1; j <= n; ++j) {
    const Vector2d cur = c.position(2.0 * pi * j / n) - z;
    acc += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
    prev = cur;
  }
  return acc / (2.0 * pi);
}

Vector2d unit(double th) { return {std::cos(th), std::sin(th)}; }
Vector2d unit_perp(double th) { return {-std::sin(th), std::cos(th)}; }

// e(th + dth) - e(th)
Vector2d unit_diff(double th, double dth) { return 2.0 * std::sin(0.5 * dth) * unit_perp(th + 0.5 * dth); }

double wrap(double th) {
  th = std::fmod(th, 2.0 * pi);
  return th < 0.0 ? th + 2.0 * pi : th;
}

// sines and cosines at m = t + dt/2 and u = t + dt from those of t and dt/2
struct Rotation {
  double sh = 0.0, ch = 1.0, sm = 0.0, cm = 1.0, su = 0.0, cu = 1.0;
  double last = std::numeric_limits<double>::quiet_NaN();
  void update(double st, double ct, double dt) {
    if (dt == last) return;
    last = dt;
    sh = std::sin(0.5 * dt);
    ch = std::cos(0.5 * dt);
    sm = st * ch + ct * sh;
    cm = ct * ch - st * sh;
    su = sm * ch + cm * sh;
    cu = cm * ch - sm * sh;
  }
};

BoundaryCurve circle(double r, Orientation o, double rho_ref) {
  BoundaryCurve c;
  c.position = [r](double t) { return Vector2d(r * unit(t)); };
  c.derivative = [r](double t) { return Vector2d(r * unit_perp(t)); };
  c.second_derivative = [r](double t) { return Vector2d(-r * unit(t)); };
  c.orientation = o;
  c.rho_ref = rho_ref;
  return c;
}

class Disc : public DomainGeometry {
 public:
  Disc(double R, double scale) : R_(R) {
    if (!(R > 0.0)) throw std::invalid_argument("make_disc: radius must be positive");
    if (!(scale > 0.0)) throw std::invalid_argument("d_scale must be positive");
    d_scale_ = scale;
    curves_.push_back(circle(R, Orientation::outer, 1.0));
    name_ = "disc";
    params_ = {R};
  }
  Vector2d map(double rho, double th) const override { return R_ * rho * unit(th); }
  double jacobian(double rho, double) const override { return R_ * R_ * rho; }
  Vector2d offset(double rho, double th, double drho, double dth) const override {
    return R_ * (drho * unit(th + dth) + rho * unit_diff(th, dth));
  }
  void tangents(double rho, double th, Vector2d& yr, Vector2d& yt) const override {
    yr = R_ * unit(th);
    yt = R_ * rho * unit_perp(th);
  }
  Vector2d to_reference(const Vector2d& x) const override {
    return {x.norm() / R_, wrap(std::atan2(x.y(), x.x()))};
  }
  double d_factor(double rho, double) const override { return d_scale_ * R_ * R_ * (1.0 + rho); }
  void sample_line(double rho, double th, int n, const double* drho, const double* dth, Sample* out) const override {
    const double st = std::sin(th), ct = std::cos(th);
    Rotation r;
    for (int q = 0; q < n; ++q) {
      r.update(st, ct, dth[q]);
      const double rr = rho + drho[q];
      out[q] = {R_ * (drho[q] * Vector2d(r.cu, r.su) + rho * 2.0 * r.sh * Vector2d(-r.sm, r.cm)), R_ * R_ * rr,
                d_factor(rr, 0.0)};
    }
  }
  double d_eval(const Vector2d& x) const override { return d_scale_ * (R_ * R_ - x.squaredNorm()); }
  Vector2d d_grad(const Vector2d& x) const override { return -2.0 * d_scale_ * x; }

 private:
  double R_;
};

class Annulus : public DomainGeometry {
 public:
  Annulus(double ri, double ro, double scale) : ri_(ri), ro_(ro) {
    if (!(ri > 0.0 && ri < ro)) throw std::invalid_argument("make_annulus: need 0 < r_inner < r_outer");
    if (!(scale > 0.0)) throw std::invalid_argument("d_scale must be positive");
    d_scale_ = scale;
    e0_ = true;
    curves_.push_back(circle(ro, Orientation::outer, 1.0));
    curves_.push_back(circle(ri, Orientation::hole, 0.0));
    name_ = "annulus";
    params_ = {ri, ro};
  }
  double radius(double rho) const { return ri_ + (ro_ - ri_) * rho; }
  Vector2d map(double rho, double th) const override { return radius(rho) * unit(th); }
  double jacobian(double rho, double) const override { return (ro_ - ri_) * radius(rho); }
  Vector2d offset(double rho, double th, double drho, double dth) const override {
    return (ro_ - ri_) * drho * unit(th + dth) + radius(rho) * unit_diff(th, dth);
  }
  void tangents(double rho, double th, Vector2d& yr, Vector2d& yt) const override {
    yr = (ro_ - ri_) * unit(th);
    yt = radius(rho) * unit_perp(th);
  }
  Vector2d to_reference(const Vector2d& x) const override {
    return {(x.norm() - ri_) / (ro_ - ri_), wrap(std::atan2(x.y(), x.x()))};
  }
  double d_factor(double rho, double) const override {
    const double r = radius(rho), L = ro_ - ri_;
    return d_scale_ * L * L * (ro_ + r) * (r + ri_);
  }
  void sample_line(double rho, double th, int n, const double* drho, const double* dth, Sample* out) const override {
    const double st = std::sin(th), ct = std::cos(th), L = ro_ - ri_;
    Rotation r;
    for (int q = 0; q < n; ++q) {
      r.update(st, ct, dth[q]);
      const double rr = rho + drho[q];
      out[q] = {L * drho[q] * Vector2d(r.cu, r.su) + radius(rho) * 2.0 * r.sh * Vector2d(-r.sm, r.cm),
                L * radius(rr), d_factor(rr, 0.0)};
    }
  }
  double d_eval(const Vector2d& x) const override {
    const double r2 = x.squaredNorm();
    return d_scale_ * (ro_ * ro_ - r2) * (r2 - ri_ * ri_);
  }
  Vector2d d_grad(const Vector2d& x) const override {
    const double r2 = x.squaredNorm();
    return d_scale_ * 2.0 * x * ((ro_ * ro_ - r2) - (r2 - ri_ * ri_));
  }

 private:
  double ri_, ro_;
};

constexpr double kA = 1.3 / 2.25, kB = 1.0 / 2.25;

void kite_grad_hess(const Vector2d& x, Vector2d& g, Eigen::Matrix2d& H) {
  const double q = x.x() + kA * x.y() * x.y();
  g = {2.0 * q, 4.0 * kA * q * x.y() + 2.0 * kB * x.y()};
  H << 2.0, 4.0 * kA * x.y(), 4.0 * kA * x.y(), 4.0 * kA * (2.0 * kA * x.y() * x.y() + q) + 2.0 * kB;
}

// g(rho X) = c2 rho^2 + c3 rho^3 + c4 rho^4 along the ray through X
void kite_coeffs(const Vector2d& X, double& c2, double& c3, double& c4) {
  const double a = X.x(), b = X.y() / 1.5;
  c2 = a * a + b * b;
  c3 = 2.6 * a * b * b;
  c4 = 1.69 * b * b * b * b;
}

Vector2d kite_tangent(double t) { return {-std::sin(t) - 1.3 * std::sin(2.0 * t), 1.5 * std::cos(t)}; }

// y = rho X(t) with X the exact parametrization of the level set g = 1
class Kite : public DomainGeometry {
 public:
  explicit Kite(double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("d_scale must be positive");
    d_scale_ = scale;
    BoundaryCurve c;
    c.position = kite_curve;
    c.derivative = kite_tangent;
    c.second_derivative = [](double t) {
      return Vector2d(-std::cos(t) - 2.6 * std::cos(2.0 * t), -1.5 * std::sin(t));
    };
    curves_.push_back(c);
    name_ = "kite";
  }
  Vector2d map(double rho, double t) const override { return rho * kite_curve(t); }
  double jacobian(double rho, double t) const override {
    const Vector2d X = kite_curve(t), dX = kite_tangent(t);
    return rho * (X.x() * dX.y() - X.y() * dX.x());
  }
  Sample sample(double rho, double t, double drho, double dt) const override {
    Sample out;
    sample_line(rho, t, 1, &drho, &dt, &out);
    return out;
  }
  void sample_line(double rho, double t, int n, const double* drho, const double* dt, Sample* out) const override {
    const double st = std::sin(t), ct = std::cos(t);
    Rotation w;
    for (int q = 0; q < n; ++q) {
      w.update(st, ct, dt[q]);
      const double dcos = -2.0 * w.sm * w.sh, dsin = 2.0 * w.cm * w.sh;
      const double dsin2 = 4.0 * w.sm * w.cm * w.sh * w.ch;
      const Vector2d X(w.cu - 1.3 * w.su * w.su, 1.5 * w.su);
      const Vector2d dX(-w.su - 2.6 * w.su * w.cu, 1.5 * w.cu);
      const double r = rho + drho[q];
      double c2, c3, c4;
      kite_coeffs(X, c2, c3, c4);
      out[q] = {drho[q] * X + rho * Vector2d(dcos - 1.3 * dsin2, 1.5 * dsin), r * (X.x() * dX.y() - X.y() * dX.x()),
                d_scale_ * (1.0 + r * (1.0 + r * ((1.0 - c2) + r * c4)))};
    }
  }
  Vector2d offset(double rho, double t, double drho, double dt) const override {
    // X(t + dt) - X(t) by product formulas
    const double m = t + 0.5 * dt, sh = std::sin(0.5 * dt);
    const double dcos = -2.0 * std::sin(m) * sh, dsin = 2.0 * std::cos(m) * sh;
    const double dsin2 = std::sin(2.0 * m) * std::sin(dt);  // sin^2(t+dt) - sin^2(t)
    const Vector2d dX(dcos - 1.3 * dsin2, 1.5 * dsin);
    return drho * kite_curve(t + dt) + rho * dX;
  }
  void tangents(double rho, double t, Vector2d& yr, Vector2d& yt) const override {
    yr = kite_curve(t);
    yt = rho * kite_tangent(t);
  }
  Vector2d to_reference(const Vector2d& x) const override {
    const double r = x.norm();
    if (r == 0.0) return {0.0, 0.0};
    // t with X(t) parallel to x: sample, then Newton on the cross product
    double best = 0.0, bv = -2.0;
    for (int j = 0; j < 256; ++j) {
      const double t = 2.0 * pi * j / 256;
      const double c = kite_curve(t).normalized().dot(x) / r;
      if (c > bv) {
        bv = c;
        best = t;
      }
    }
    double t = best;
    for (int it = 0; it < 50; ++it) {
      const Vector2d X = kite_curve(t), dX = kite_tangent(t);
      const double f = X.x() * x.y() - X.y() * x.x();
      const double df = dX.x() * x.y() - dX.y() * x.x();
      const double step = f / df;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    return {r / kite_curve(t).norm(), wrap(t)};
  }
  double d_factor(double rho, double t) const override {
    // 1 - p(rho) = (1 - rho) q(rho) with p(1) = 1
    double c2, c3, c4;
    kite_coeffs(kite_curve(t), c2, c3, c4);
    return d_scale_ * (1.0 + rho * (1.0 + rho * ((1.0 - c2) + rho * c4)));
  }
  double d_eval(const Vector2d& x) const override { return d_scale_ * (1.0 - kite_g(x)); }
  Vector2d d_grad(const Vector2d& x) const override {
    Vector2d g;
    Eigen::Matrix2d H;
    kite_grad_hess(x, g, H);
    return -d_scale_ * g;
  }
};

}  // namespace

bool DomainGeometry::contains(const Vector2d& x) const {
  double w = winding(curves_[0], x);
  for (size_t c = 1; c < curves_.size(); ++c) w -= winding(curves_[c], x);
  return std::lround(w) == 1;
}

double DomainGeometry::area() const {
  const int n = 256;
  double a = 0.0;
  for (const auto& c : curves_) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * pi * j / n;
      const Vector2d p = c.position(t), d = c.derivative(t);
      acc += 0.5 * (p.x() * d.y() - p.y() * d.x());
    }
    a += c.sign() * acc * 2.0 * pi / n;
  }
  return a;
}

double kite_g(const Vector2d& x) {
  const double q = x.x() + kA * x.y() * x.y();
  return q * q + kB * x.y() * x.y();
}

Vector2d kite_curve(double t) {
  const double sn = std::sin(t);
  return {std::cos(t) - 1.3 * sn * sn, 1.5 * sn};
}

Domain make_disc(double radius, double d_scale) { return std::make_shared<Disc>(radius, d_scale); }
Domain make_kite(double d_scale) { return std::make_shared<Kite>(d_scale); }
Domain make_annulus(double r_inner, double r_outer, double d_scale) {
  return std::make_shared<Annulus>(r_inner, r_outer, d_scale);
}

Eigen::VectorXd VolumeGrid::interp_row(double r, double th) const {
  Eigen::VectorXd a(nr), b(nt);
  rho_interp.weights(r, a.data());
  th_interp.weights(th, b.data());
  Eigen::MatrixXd m = a * b.transpose();
  return Eigen::Map<Eigen::VectorXd>(m.data(), m.size());
}

double VolumeGrid::interpolate(const Eigen::VectorXd& values, double r, double th) const {
  Eigen::VectorXd a(nr), b(nt);
  rho_interp.weights(r, a.data());
  th_interp.weights(th, b.data());
  return a.dot(Eigen::Map<const Eigen::MatrixXd>(values.data(), nr, nt) * b);
}

VolumeGrid make_grid(const DomainGeometry& domain, int nr, int nt) {
  if (nr < 2 || nt < 4 || nt % 2) throw std::invalid_argument("make_grid: need nr >= 2 and even nt >= 4");
  VolumeGrid g;
  g.nr = nr;
  g.nt = nt;
  g.rho_interp = ChebInterp(nr, 0.0, 1.0);
  g.th_interp = TrigInterp(nt);
  const Eigen::VectorXd r = g.rho_interp.nodes();
  const Eigen::VectorXd fw = fejer_weights(nr, 0.0, 1.0);
  const int N = nr * nt;
  g.nodes.resize(2, N);
  g.rho.resize(N);
  g.theta.resize(N);
  g.weights.resize(N);
  g.near_boundary.assign(N, false);
  double hb = 0.0;
  for (const auto& c : domain.curves())
    for (int j = 0; j < nt; ++j) hb = std::max(hb, c.speed(2.0 * pi * j / nt) * 2.0 * pi / nt);
  for (int j = 0; j < nt; ++j) {
    const double th = g.th_interp.node(j);
    for (int i = 0; i < nr; ++i) {
      const int k = g.index(i, j);
      g.rho[k] = r[i];
      g.theta[k] = th;
      g.nodes.col(k) = domain.map(r[i], th);
      g.weights[k] = fw[i] * (2.0 * pi / nt) * domain.jacobian(r[i], th);
      double ar, at;
      domain.metric(r[i], th, ar, at);
      double dist = (1.0 - r[i]) * ar;
      if (domain.zero_at_zero()) dist = std::min(dist, r[i] * ar);
      g.near_boundary[k] = dist < 5.0 * hb;
    }
  }
  return g;
}

}  // namespace fl
