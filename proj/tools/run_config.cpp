#include "run_config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace flcli {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void RunConfig::validate() const {
  static const std::set<std::string> problems{"solve1d", "solve2d", "convergence", "oracle", "verify-composition"};
  static const std::set<std::string> domains{"disc", "kite", "annulus", "interval"};
  static const std::set<std::string> rhs_kinds{"family", "constant", "expression", "fractional_laplacian_of"};
  static const std::set<std::string> gs{"disc", "annulus", "kite"};
  static const std::set<std::string> refs{"auto", "exact", "finest", "none"};
  if (!problems.count(problem)) throw std::invalid_argument("unknown problem '" + problem + "'");
  if (!domains.count(domain.type)) throw std::invalid_argument("unknown domain '" + domain.type + "'");
  if (!rhs_kinds.count(rhs.kind)) throw std::invalid_argument("unknown rhs kind '" + rhs.kind + "'");
  if (rhs.kind == "family" && !gs.count(rhs.g)) throw std::invalid_argument("unknown family g '" + rhs.g + "'");
  if (!refs.count(reference)) throw std::invalid_argument("unknown reference '" + reference + "'");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
  if (rhs.k < 0) throw std::invalid_argument("rhs.k must be non-negative");
  const bool one_d = domain.type == "interval";
  if (problem == "solve1d" && !one_d) throw std::invalid_argument("solve1d needs an interval domain");
  if ((problem == "solve2d" || problem == "verify-composition") && one_d)
    throw std::invalid_argument(problem + " needs a 2D domain");
  if (problem == "solve1d" || problem == "solve2d" || problem == "convergence") {
    if (resolutions.empty()) throw std::invalid_argument("resolutions must not be empty");
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
      const Resolution& r = resolutions[i];
      if (one_d ? r.n < 4 : (r.nr < 2 || r.nt < 4 || r.nt % 2 || r.nb < 0 || r.nb % 2))
        throw std::invalid_argument("invalid resolution entry " + std::to_string(i));
      if (i > 0) {
        const Resolution& p = resolutions[i - 1];
        const bool inc = one_d ? r.n > p.n : r.nr * r.nt > p.nr * p.nt || (r.nr * r.nt == p.nr * p.nt && r.nb > p.nb);
        if (!inc) throw std::invalid_argument("resolutions must be strictly increasing");
      }
    }
  }
  if (problem == "oracle" && points.empty()) throw std::invalid_argument("oracle needs points");
  if (problem == "oracle" && exact.empty()) throw std::invalid_argument("oracle needs the function in 'exact'");
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  if (slice.points < 0) throw std::invalid_argument("slice.points must be non-negative");
}

RunConfig parse_config(const json& j) {
  only_keys(j, {"problem", "domain", "s", "rhs", "exact", "reference", "resolutions", "points", "targets", "fd_step",
                "quadrature", "slice", "tolerances"},
            "config");
  RunConfig c;
  get(j, "problem", c.problem);
  get(j, "s", c.s);
  get(j, "exact", c.exact);
  get(j, "reference", c.reference);
  get(j, "points", c.points);
  get(j, "targets", c.targets);
  get(j, "fd_step", c.fd_step);
  if (j.contains("domain")) {
    const json& d = j.at("domain");
    only_keys(d, {"type", "radius", "r_inner", "r_outer", "a", "b", "d_scale"}, "domain");
    get(d, "type", c.domain.type);
    get(d, "radius", c.domain.radius);
    get(d, "r_inner", c.domain.r_inner);
    get(d, "r_outer", c.domain.r_outer);
    get(d, "a", c.domain.a);
    get(d, "b", c.domain.b);
    get(d, "d_scale", c.domain.d_scale);
  }
  if (j.contains("rhs")) {
    const json& r = j.at("rhs");
    only_keys(r, {"kind", "k", "g", "value", "expression"}, "rhs");
    get(r, "kind", c.rhs.kind);
    get(r, "k", c.rhs.k);
    get(r, "g", c.rhs.g);
    get(r, "value", c.rhs.value);
    get(r, "expression", c.rhs.expression);
  }
  if (j.contains("resolutions")) {
    for (const json& r : j.at("resolutions")) {
      Resolution res;
      if (r.is_number_integer()) {
        res.n = r.get<int>();
      } else {
        only_keys(r, {"n", "nr", "nt", "nb"}, "resolution");
        get(r, "n", res.n);
        get(r, "nr", res.nr);
        get(r, "nt", res.nt);
        get(r, "nb", res.nb);
      }
      c.resolutions.push_back(res);
    }
  }
  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    only_keys(q, {"nv", "ni", "corner", "v_panel", "i_panel", "band"}, "quadrature");
    get(q, "nv", c.quadrature.nv);
    get(q, "ni", c.quadrature.ni);
    get(q, "corner", c.quadrature.corner);
    get(q, "v_panel", c.quadrature.v_panel);
    get(q, "i_panel", c.quadrature.i_panel);
    get(q, "band", c.quadrature.band);
  }
  if (j.contains("slice")) {
    const json& s = j.at("slice");
    only_keys(s, {"from", "to", "points"}, "slice");
    get(s, "from", c.slice.from);
    get(s, "to", c.slice.to);
    get(s, "points", c.slice.points);
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    only_keys(t, {"eps_inf", "residual"}, "tolerances");
    if (t.contains("eps_inf")) c.tolerances.eps_inf = t.at("eps_inf").get<double>();
    if (t.contains("residual")) c.tolerances.residual = t.at("residual").get<double>();
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::type_error& e) {
    throw std::invalid_argument(std::string("config has a field of the wrong type: ") + e.what());
  }
}

json to_json(const RunConfig& c) {
  json j;
  j["problem"] = c.problem;
  j["domain"] = {{"type", c.domain.type}, {"radius", c.domain.radius}, {"r_inner", c.domain.r_inner},
                 {"r_outer", c.domain.r_outer}, {"a", c.domain.a},     {"b", c.domain.b},
                 {"d_scale", c.domain.d_scale}};
  j["s"] = c.s;
  j["rhs"] = {{"kind", c.rhs.kind}, {"k", c.rhs.k}, {"g", c.rhs.g}, {"value", c.rhs.value},
              {"expression", c.rhs.expression}};
  j["exact"] = c.exact;
  j["reference"] = c.reference;
  j["resolutions"] = json::array();
  for (const auto& r : c.resolutions) j["resolutions"].push_back({{"n", r.n}, {"nr", r.nr}, {"nt", r.nt}, {"nb", r.nb}});
  j["points"] = c.points;
  j["targets"] = c.targets;
  j["fd_step"] = c.fd_step;
  j["quadrature"] = {{"nv", c.quadrature.nv},
                     {"ni", c.quadrature.ni},
                     {"corner", c.quadrature.corner},
                     {"v_panel", c.quadrature.v_panel},
                     {"i_panel", c.quadrature.i_panel},
                     {"band", c.quadrature.band}};
  j["slice"] = {{"from", c.slice.from}, {"to", c.slice.to}, {"points", c.slice.points}};
  j["tolerances"] = json::object();
  if (c.tolerances.eps_inf) j["tolerances"]["eps_inf"] = *c.tolerances.eps_inf;
  if (c.tolerances.residual) j["tolerances"]["residual"] = *c.tolerances.residual;
  return j;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  auto dom = [](const DomainSpec& d) { return std::tie(d.type, d.radius, d.r_inner, d.r_outer, d.a, d.b, d.d_scale); };
  auto rhs = [](const RhsSpec& r) { return std::tie(r.kind, r.k, r.g, r.value, r.expression); };
  auto res = [](const std::vector<Resolution>& v) {
    std::vector<std::array<int, 4>> out;
    for (const auto& r : v) out.push_back({r.n, r.nr, r.nt, r.nb});
    return out;
  };
  auto quad = [](const fl::VolumeQuadOptions& q) { return std::tie(q.nv, q.ni, q.corner, q.v_panel, q.i_panel, q.band); };
  return a.problem == b.problem && dom(a.domain) == dom(b.domain) && a.s == b.s && rhs(a.rhs) == rhs(b.rhs) &&
         a.exact == b.exact && a.reference == b.reference && res(a.resolutions) == res(b.resolutions) &&
         a.points == b.points && a.targets == b.targets && a.fd_step == b.fd_step &&
         quad(a.quadrature) == quad(b.quadrature) && a.slice.from == b.slice.from && a.slice.to == b.slice.to &&
         a.slice.points == b.slice.points && a.tolerances.eps_inf == b.tolerances.eps_inf &&
         a.tolerances.residual == b.tolerances.residual;
}

}  // namespace flcli
