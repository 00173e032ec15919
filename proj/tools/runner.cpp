#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "fl/expression.hpp"
#include "fl/geometry.hpp"
#include "fl/manufactured.hpp"
#include "fl/oracle.hpp"
#include "fl/solver1d.hpp"
#include "fl/solver2d.hpp"

#ifndef FL_GIT_DESCRIBE
#define FL_GIT_DESCRIBE "unknown"
#endif

namespace flcli {

using nlohmann::json;
using Eigen::VectorXd;
using fl::Vector2d;

std::string build_version() { return FL_GIT_DESCRIBE; }

namespace {

using Clock = std::chrono::steady_clock;

struct Logger {
  bool on;
  template <typename... A>
  void operator()(const char* fmt, A... a) const {
    if (!on) return;
    if constexpr (sizeof...(A) == 0) std::fputs(fmt, stderr);
    else std::fprintf(stderr, fmt, a...);
    std::fputc('\n', stderr);
  }
};

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

bool one_d(const RunConfig& c) { return c.domain.type == "interval"; }

fl::Domain make_domain(const DomainSpec& d) {
  if (d.type == "disc") return fl::make_disc(d.radius, d.d_scale);
  if (d.type == "kite") return fl::make_kite(d.d_scale);
  if (d.type == "annulus") return fl::make_annulus(d.r_inner, d.r_outer, d.d_scale);
  throw std::invalid_argument("domain '" + d.type + "' is not two-dimensional");
}

fl::Field2D family_g(const std::string& g) {
  if (g == "disc") return fl::g_disc;
  if (g == "annulus") return fl::g_annulus;
  return fl::kite_g;
}

bool radial_support(const DomainSpec& d, double& r0, double& r1) {
  if (d.type == "disc") {
    r0 = 0.0;
    r1 = d.radius;
    return true;
  }
  if (d.type == "annulus") {
    r0 = d.r_inner;
    r1 = d.r_outer;
    return true;
  }
  return false;
}

bool is_family_exact(const RunConfig& c) { return c.exact == "family"; }

// Exact u in 2D, or an empty function.
fl::Field2D exact_u_2d(const RunConfig& c) {
  if (c.exact.empty()) return {};
  if (is_family_exact(c)) {
    if (c.domain.type != "disc" || c.domain.radius != 1.0 || c.rhs.kind != "family" || c.rhs.g != "disc")
      throw std::invalid_argument("exact 'family' needs the unit disc with the disc family rhs");
    return fl::disc_exact_u({c.s, c.rhs.k, fl::g_disc, "disc"});
  }
  const fl::Expression e(c.exact);
  return [e](const Vector2d& x) { return e(x.x(), x.y()); };
}

std::function<double(double)> exact_u_1d(const RunConfig& c) {
  if (c.exact.empty()) return {};
  if (is_family_exact(c)) throw std::invalid_argument("exact 'family' has no closed form in 1D; give an expression");
  const fl::Expression e(c.exact);
  return [e](double x) { return e(x, 0.0); };
}

fl::OracleConfig oracle_config() { return {}; }

fl::Field2D rhs_2d(const RunConfig& c) {
  const RhsSpec& r = c.rhs;
  if (r.kind == "constant") {
    const double v = r.value;
    return [v](const Vector2d&) { return v; };
  }
  if (r.kind == "expression") {
    const fl::Expression e(r.expression);
    return [e](const Vector2d& x) { return e(x.x(), x.y()); };
  }
  if (r.kind == "family") return fl::family_rhs({c.s, r.k, family_g(r.g), c.domain.type});
  double r0, r1;
  if (!radial_support(c.domain, r0, r1))
    throw std::invalid_argument("fractional_laplacian_of needs a disc or annulus in 2D");
  const fl::Expression e(r.expression);
  const double s = c.s;
  return [e, r0, r1, s](const Vector2d& x) {
    const double rad = x.norm();
    return fl::frac_lap_radial_2d([&e](double t) { return e(t, 0.0); }, r0, r1, rad, s, oracle_config()).value;
  };
}

std::function<double(double)> rhs_1d(const RunConfig& c) {
  const RhsSpec& r = c.rhs;
  if (r.kind == "constant") {
    const double v = r.value;
    return [v](double) { return v; };
  }
  if (r.kind == "expression") {
    const fl::Expression e(r.expression);
    return [e](double x) { return e(x, 0.0); };
  }
  if (r.kind == "family") throw std::invalid_argument("the family rhs is two-dimensional");
  const fl::Expression e(r.expression);
  const fl::Interval1D iv(c.domain.a, c.domain.b);
  const double s = c.s;
  return [e, iv, s](double x) {
    return fl::frac_lap_direct_1d([&e](double t) { return e(t, 0.0); }, iv, x, s, oracle_config()).value;
  };
}

// eps_inf relative to max|u_ref|, absolute when the reference vanishes.
fl::ErrorMetrics metrics(const VectorXd& u, const VectorXd& ref) {
  if (ref.cwiseAbs().maxCoeff() > 0.0) return fl::error_metrics(u, ref);
  const VectorXd d = u - ref;
  return {d.cwiseAbs().maxCoeff(), std::sqrt(d.squaredNorm() / d.size())};
}

struct Row {
  int N;
  std::optional<fl::ErrorMetrics> err;
  double time;
};

void write_report(const std::filesystem::path& path, const std::vector<Row>& rows) {
  std::ofstream out(path);
  out << "N,eps_inf,eps_rms,noc,time_sec\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    out << r.N << ',';
    if (r.err) out << sci(r.err->eps_inf) << ',' << sci(r.err->eps_rms);
    else out << ',';
    out << ',';
    if (i > 0 && r.err && rows[i - 1].err && r.err->eps_inf > 0.0 && rows[i - 1].err->eps_inf > 0.0)
      out << sci(fl::noc(rows[i - 1].N, rows[i - 1].err->eps_inf, r.N, r.err->eps_inf));
    out << ',' << sci(r.time) << '\n';
  }
}

json vec(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json points_json(const Eigen::Matrix2Xd& p) {
  json a = json::array();
  for (Eigen::Index k = 0; k < p.cols(); ++k) a.push_back({p(0, k), p(1, k)});
  return a;
}

json metadata(const RunConfig& c, int N) {
  return {{"problem", c.problem}, {"s", c.s},          {"domain", to_json(c).at("domain")},
          {"N", N},               {"config", to_json(c)}, {"build", build_version()}};
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

bool tolerance_ok(const RunConfig& c, const std::vector<Row>& rows, const Logger& log) {
  if (!c.tolerances.eps_inf) return true;
  if (rows.empty() || !rows.back().err) {
    log("eps_inf tolerance requested but no reference is available");
    return false;
  }
  const double e = rows.back().err->eps_inf;
  log("final eps_inf %.3e (tolerance %.3e)", e, *c.tolerances.eps_inf);
  return e <= *c.tolerances.eps_inf;
}

std::string resolve_reference(const RunConfig& c) {
  if (c.reference != "auto") return c.reference;
  if (!c.exact.empty()) return "exact";
  return c.problem == "convergence" ? "finest" : "none";
}

int run_1d(const RunConfig& c, const RunOptions& opt, const Logger& log) {
  const fl::Interval1D iv(c.domain.a, c.domain.b);
  const fl::FractionalOrder s(c.s);
  const auto f = rhs_1d(c);
  const std::string ref = resolve_reference(c);
  const auto u_exact = exact_u_1d(c);
  if (ref == "exact" && !u_exact) throw std::invalid_argument("reference 'exact' needs 'exact'");

  // fixed sample points shared by all resolutions
  const int m = 201;
  VectorXd xs(m);
  for (int i = 0; i < m; ++i) xs[i] = iv.a + iv.length() * i / (m - 1);
  auto sample = [&](const fl::Solution1D& sol) {
    VectorXd u(m);
    for (int i = 0; i < m; ++i) u[i] = sol.u_eval(xs[i]);
    return u;
  };

  std::vector<fl::Solution1D> sols;
  std::vector<double> times;
  for (const Resolution& r : c.resolutions) {
    const auto t0 = Clock::now();
    sols.push_back(fl::solve_1d({iv, s, f}, r.n));
    times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    log("solve1d n=%d: %.2f s, rcond %.2e", r.n, times.back(), sols.back().rcond);
  }
  std::vector<Row> rows;
  const VectorXd u_fine = sample(sols.back());
  VectorXd u_ref;
  if (ref == "exact") {
    u_ref.resize(m);
    for (int i = 0; i < m; ++i) u_ref[i] = u_exact(xs[i]);
  }
  const std::size_t nrows = ref == "finest" ? sols.size() - 1 : sols.size();
  for (std::size_t k = 0; k < nrows; ++k) {
    Row row{c.resolutions[k].n + 2, std::nullopt, times[k]};
    if (ref == "exact") row.err = metrics(sample(sols[k]), u_ref);
    if (ref == "finest") row.err = metrics(sample(sols[k]), u_fine);
    rows.push_back(row);
  }
  write_report(opt.out_dir / "report.csv", rows);

  const fl::Solution1D& sol = sols.back();
  const VectorXd nodes = fl::lobatto_points(static_cast<int>(sol.phi.coeffs.size()), iv.a, iv.b);
  VectorXd u(nodes.size()), phi(nodes.size());
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    u[i] = sol.u_eval(nodes[i]);
    phi[i] = sol.phi_eval(nodes[i]);
  }
  json j = {{"nodes", vec(nodes)},
            {"u", vec(u)},
            {"phi", vec(phi)},
            {"phi_coeffs", vec(sol.phi.coeffs)},
            {"zeta", {sol.zeta1, sol.zeta2}},
            {"a", json::array()},
            {"diagnostics", {{"rcond", sol.rcond}, {"residual", sol.residual}, {"rhs_tail", sol.rhs_tail}}},
            {"metadata", metadata(c, c.resolutions.back().n + 2)}};
  write_json(opt.out_dir / "solution.json", j);

  if (c.slice.points > 0) {
    std::ofstream out(opt.out_dir / "slice.csv");
    out << "x,u\n";
    const int p = c.slice.points;
    for (int i = 0; i < p; ++i) {
      const double x = p == 1 ? c.slice.from[0] : c.slice.from[0] + (c.slice.to[0] - c.slice.from[0]) * i / (p - 1);
      out << sci(x) << ',' << sci(x >= iv.a && x <= iv.b ? sol.u_eval(x) : 0.0) << '\n';
    }
  }
  return tolerance_ok(c, rows, log) ? 0 : 1;
}

int run_2d(const RunConfig& c, const RunOptions& opt, const Logger& log) {
  const fl::Domain domain = make_domain(c.domain);
  const fl::FractionalOrder s(c.s);
  const fl::Field2D f = rhs_2d(c);
  const std::string ref = resolve_reference(c);
  const fl::Field2D u_exact = exact_u_2d(c);
  if (ref == "exact" && !u_exact) throw std::invalid_argument("reference 'exact' needs 'exact'");

  std::vector<fl::Solution2D> sols;
  std::vector<double> times;
  for (const Resolution& r : c.resolutions) {
    fl::Resolution2D res;
    res.nr = r.nr;
    res.nt = r.nt;
    res.nb = r.nb;
    res.quad = c.quadrature;
    const auto t0 = Clock::now();
    sols.push_back(fl::solve_2d({domain, s, f}, res));
    times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    const auto& sol = sols.back();
    log("solve2d nr=%d nt=%d nb=%d: N=%d, %.2f s, rcond %.2e", r.nr, r.nt, res.boundary_nodes(), sol.N(),
        times.back(), sol.rcond);
    if (sol.holes.degenerate) log("  hole basis: degenerate S, residual %.2e", sol.holes.residual);
  }

  auto sample = [](const fl::Solution2D& sol, const Eigen::Matrix2Xd& pts) {
    VectorXd u(pts.cols());
    for (Eigen::Index k = 0; k < pts.cols(); ++k) u[k] = sol.u_eval(pts.col(k));
    return u;
  };
  std::vector<Row> rows;
  const std::size_t nrows = ref == "finest" ? sols.size() - 1 : sols.size();
  for (std::size_t k = 0; k < nrows; ++k) {
    Row row{sols[k].N(), std::nullopt, times[k]};
    if (ref == "exact") {
      const auto& nodes = sols[k].grid.nodes;
      VectorXd u_ref(nodes.cols());
      for (Eigen::Index q = 0; q < nodes.cols(); ++q) u_ref[q] = u_exact(nodes.col(q));
      row.err = metrics(sols[k].u_nodes(), u_ref);
    }
    if (ref == "finest") {
      const auto& fine = sols.back();
      row.err = metrics(sample(sols[k], fine.grid.nodes), fine.u_nodes());
    }
    if (row.err) log("N=%d eps_inf %.3e eps_rms %.3e", row.N, row.err->eps_inf, row.err->eps_rms);
    rows.push_back(row);
  }
  write_report(opt.out_dir / "report.csv", rows);

  const fl::Solution2D& sol = sols.back();
  json j = {{"nodes", points_json(sol.grid.nodes)},
            {"u", vec(sol.u_nodes())},
            {"phi", vec(sol.phi)},
            {"boundary_nodes", points_json(sol.boundary.points)},
            {"zeta", vec(sol.zeta)},
            {"a", vec(sol.a)},
            {"diagnostics",
             {{"rcond", sol.rcond},
              {"residual", sol.residual},
              {"hole_basis_residual", sol.holes.residual},
              {"hole_basis_degenerate", sol.holes.degenerate}}},
            {"metadata", metadata(c, sol.N())}};
  write_json(opt.out_dir / "solution.json", j);

  if (c.slice.points > 0) {
    std::ofstream out(opt.out_dir / "slice.csv");
    out << "x,y,u\n";
    const int p = c.slice.points;
    const Vector2d a(c.slice.from[0], c.slice.from[1]), b(c.slice.to[0], c.slice.to[1]);
    for (int i = 0; i < p; ++i) {
      const Vector2d x = p == 1 ? a : Vector2d(a + (b - a) * (static_cast<double>(i) / (p - 1)));
      out << sci(x.x()) << ',' << sci(x.y()) << ',' << sci(sol.u_eval(x)) << '\n';
    }
  }
  return tolerance_ok(c, rows, log) ? 0 : 1;
}

int run_oracle(const RunConfig& c, const RunOptions& opt, const Logger& log) {
  const bool line = one_d(c);
  double r0 = 0.0, r1 = 0.0;
  if (!line && !radial_support(c.domain, r0, r1)) throw std::invalid_argument("the 2D oracle needs a disc or annulus");
  std::function<double(double)> uf;
  if (c.exact == "family") {
    if (line) {
      uf = fl::interval_family_u(c.s, c.rhs.k);
    } else {
      const auto u2 = exact_u_2d(c);
      uf = [u2](double r) { return u2(Vector2d(r, 0.0)); };
    }
  } else {
    const fl::Expression u(c.exact);
    uf = [u](double x) { return u(x, 0.0); };
  }
  const bool compare = !(c.rhs.kind == "family" && line) && c.rhs.kind != "fractional_laplacian_of";
  std::function<double(double)> f;
  if (compare) {
    if (line) {
      f = rhs_1d(c);
    } else {
      const auto f2 = rhs_2d(c);
      f = [f2](double r) { return f2(Vector2d(r, 0.0)); };
    }
  }
  std::ofstream out(opt.out_dir / "oracle.csv");
  out << (line ? "x" : "r") << ",value,error_estimate" << (compare ? ",f" : "") << '\n';
  double worst = 0.0, fmax = 0.0;
  for (double x : c.points) {
    const fl::OracleResult res = line ? fl::frac_lap_direct_1d(uf, fl::Interval1D(c.domain.a, c.domain.b), x, c.s)
                                      : fl::frac_lap_radial_2d(uf, r0, r1, x, c.s);
    out << sci(x) << ',' << sci(res.value) << ',' << sci(res.error);
    if (compare) {
      const double fx = f(x);
      out << ',' << sci(fx);
      worst = std::max(worst, std::abs(res.value - fx));
      fmax = std::max(fmax, std::abs(fx));
    }
    out << '\n';
    log("oracle at %.6f: %.15e (+- %.1e)", x, res.value, res.error);
  }
  if (!c.tolerances.eps_inf) return 0;
  if (!compare) {
    log("eps_inf tolerance requested but no rhs to compare with");
    return 1;
  }
  const double e = fmax > 0.0 ? worst / fmax : worst;
  log("oracle vs rhs: %.3e (tolerance %.3e)", e, *c.tolerances.eps_inf);
  return e <= *c.tolerances.eps_inf ? 0 : 1;
}

int run_composition(const RunConfig& c, const RunOptions& opt, const Logger& log) {
  const fl::Domain domain = make_domain(c.domain);
  const fl::Field2D u = exact_u_2d(c);
  if (!u) throw std::invalid_argument("verify-composition needs u in 'exact'");
  if (c.targets.empty()) throw std::invalid_argument("verify-composition needs targets");
  std::vector<Vector2d> targets;
  for (const auto& t : c.targets) targets.emplace_back(t[0], t[1]);
  const fl::CompositionReport rep =
      fl::verify_composition(u, {}, rhs_2d(c), *domain, c.s, targets, c.fd_step, c.quadrature);
  std::ofstream out(opt.out_dir / "composition.csv");
  out << "x,y,lhs,f\n";
  for (std::size_t k = 0; k < targets.size(); ++k)
    out << sci(targets[k].x()) << ',' << sci(targets[k].y()) << ',' << sci(rep.lhs[k]) << ',' << sci(rep.f[k]) << '\n';
  log("composition residual %.3e", rep.max_rel_residual);
  if (!c.tolerances.residual) return 0;
  return rep.max_rel_residual <= *c.tolerances.residual ? 0 : 1;
}

}  // namespace

int run(const RunConfig& c, const RunOptions& opt) {
  c.validate();
  std::filesystem::create_directories(opt.out_dir);
  const Logger log{opt.verbose};
  if (c.problem == "oracle") return run_oracle(c, opt, log);
  if (c.problem == "verify-composition") return run_composition(c, opt, log);
  return one_d(c) ? run_1d(c, opt, log) : run_2d(c, opt, log);
}

int run_file(const std::string& config_path, const RunOptions& opt) {
  std::string stage = "config";
  try {
    const RunConfig c = load_config(config_path);
    stage = "run";
    return run(c, opt);
  } catch (const std::exception& e) {
    const json err = {{"error", {{"stage", stage}, {"type", stage == "config" ? "invalid_config" : "module_failure"},
                                 {"message", e.what()}, {"config", config_path}}}};
    std::cerr << err.dump() << '\n';
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (!ec) write_json(opt.out_dir / "error.json", err);
    return 2;
  }
}

}  // namespace flcli
