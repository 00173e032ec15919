#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "run_config.hpp"
#include "runner.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kDisc = R"j({
  "problem": "convergence",
  "domain": {"type": "disc"},
  "s": 0.5,
  "rhs": {"kind": "family", "k": 2, "g": "disc"},
  "exact": "family",
  "resolutions": [{"nr": 2, "nt": 8}, {"nr": 3, "nt": 8}, {"nr": 5, "nt": 8}],
  "slice": {"from": [-1, 0], "to": [1, 0], "points": 11},
  "tolerances": {"eps_inf": 1e-6}
})j";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fl_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config round trip") {
  const flcli::RunConfig c = flcli::parse_config(json::parse(kDisc));
  CHECK(c.problem == "convergence");
  CHECK(c.resolutions.size() == 3);
  CHECK(c.resolutions[2].nr == 5);
  CHECK(c.tolerances.eps_inf.value() == 1e-6);
  const flcli::RunConfig back = flcli::parse_config(flcli::to_json(c));
  CHECK(back == c);
  CHECK(flcli::to_json(back) == flcli::to_json(c));
  flcli::RunConfig other = c;
  other.quadrature.nv = 30;
  CHECK_FALSE(other == c);
}

TEST_CASE("config validation") {
  auto bad = [](const std::string& patch) {
    json j = json::parse(kDisc);
    j.merge_patch(json::parse(patch));
    return flcli::parse_config(j);
  };
  CHECK_THROWS_WITH_AS(bad(R"j({"bogus": 1})j"), "unknown key 'bogus' in config", std::invalid_argument);
  CHECK_THROWS_AS(bad(R"j({"rhs": {"extra": 2}})j"), std::invalid_argument);
  CHECK_THROWS_AS(bad(R"j({"domain": {"type": "square"}})j"), std::invalid_argument);
  CHECK_THROWS_AS(bad(R"j({"problem": "plot"})j"), std::invalid_argument);
  CHECK_THROWS_AS(bad(R"j({"s": 1.0})j"), std::invalid_argument);
  CHECK_THROWS_AS(bad(R"j({"resolutions": [{"nr": 3, "nt": 8}, {"nr": 2, "nt": 8}]})j"), std::invalid_argument);
  CHECK_THROWS_AS(bad(R"j({"resolutions": []})j"), std::invalid_argument);
  CHECK_THROWS_AS(bad(R"j({"resolutions": [{"nr": 3, "nt": 7}]})j"), std::invalid_argument);
  CHECK_THROWS_AS(bad(R"j({"problem": "solve1d"})j"), std::invalid_argument);
  CHECK_NOTHROW(bad(R"j({"problem": "solve1d", "domain": {"type": "interval"}, "resolutions": [8, 16]})j"));
}

TEST_CASE("convergence run artifacts") {
  const fs::path out = scratch_dir("disc");
  const int status = flcli::run(flcli::parse_config(json::parse(kDisc)), {out, false});
  CHECK(status == 0);
  std::ifstream rep(out / "report.csv");
  std::string header, row1, row2;
  std::getline(rep, header);
  std::getline(rep, row1);
  std::getline(rep, row2);
  CHECK(header == "N,eps_inf,eps_rms,noc,time_sec");
  CHECK(row1.rfind("24,", 0) == 0);
  CHECK(row1.find(",,") != std::string::npos);  // empty first noc
  CHECK(row2.rfind("32,", 0) == 0);
  CHECK(row2.find(",,") == std::string::npos);
  const json sol = json::parse(slurp(out / "solution.json"));
  CHECK(sol.at("u").size() == 40);
  CHECK(sol.at("nodes").size() == 40);
  CHECK(sol.at("zeta").size() == 8);
  CHECK(sol.at("metadata").at("s") == 0.5);
  CHECK(sol.at("metadata").at("domain").at("type") == "disc");
  CHECK(sol.at("metadata").contains("build"));
  CHECK(fs::exists(out / "slice.csv"));
}

TEST_CASE("tolerance miss and failures") {
  json j = json::parse(kDisc);
  j["tolerances"]["eps_inf"] = 1e-20;
  const fs::path out = scratch_dir("miss");
  CHECK(flcli::run(flcli::parse_config(j), {out, false}) == 1);

  const fs::path cfg = fs::temp_directory_path() / "fl_test_cli_bad.json";
  std::ofstream(cfg) << R"j({"problem": "solve2d", "domain": {"type": "hexagon"}})j";
  const fs::path out2 = scratch_dir("bad");
  CHECK(flcli::run_file(cfg.string(), {out2, false}) == 2);
  const json err = json::parse(slurp(out2 / "error.json"));
  CHECK(err.at("error").at("type") == "invalid_config");

  // failure inside a module: exact family on the kite
  std::ofstream(cfg) << R"j({"problem": "solve2d", "domain": {"type": "kite"}, "exact": "family",
                           "rhs": {"kind": "family", "g": "kite"}, "resolutions": [{"nr": 3, "nt": 8}]})j";
  const fs::path out3 = scratch_dir("module");
  CHECK(flcli::run_file(cfg.string(), {out3, false}) == 2);
  CHECK(json::parse(slurp(out3 / "error.json")).at("error").at("type") == "module_failure");
  CHECK(flcli::run_file("/nonexistent/config.json", {out3, false}) == 2);
}

TEST_CASE("zero right-hand side") {
  const json j = json::parse(R"j({"problem": "solve1d", "domain": {"type": "interval"}, "s": 0.3,
      "rhs": {"kind": "constant", "value": 0}, "exact": "0", "resolutions": [8, 12], "tolerances": {"eps_inf": 1e-14}})j");
  const fs::path out = scratch_dir("zero");
  CHECK(flcli::run(flcli::parse_config(j), {out, false}) == 0);
  const json sol = json::parse(slurp(out / "solution.json"));
  for (double v : sol.at("u")) CHECK(v == 0.0);
}

TEST_CASE("oracle and composition runs") {
  const fs::path out = scratch_dir("oracle");
  const json o = json::parse(R"j({"problem": "oracle", "domain": {"type": "interval"}, "s": 0.5,
      "rhs": {"kind": "constant", "value": 1}, "exact": "sqrt(1 - x^2)", "points": [-0.5, 0, 0.7],
      "tolerances": {"eps_inf": 1e-8}})j");
  CHECK(flcli::run(flcli::parse_config(o), {out, false}) == 0);
  CHECK(fs::exists(out / "oracle.csv"));
  const json c = json::parse(R"j({"problem": "verify-composition", "domain": {"type": "disc"}, "s": 0.75,
      "rhs": {"kind": "family", "k": 0}, "exact": "family", "targets": [[0.2, 0.1]], "tolerances": {"residual": 1e-5}})j");
  CHECK(flcli::run(flcli::parse_config(c), {out, false}) == 0);
  CHECK(fs::exists(out / "composition.csv"));
}
