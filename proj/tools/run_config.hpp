#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fl/volume_quad.hpp"

namespace flcli {

struct DomainSpec {
  std::string type = "disc";  // disc | kite | annulus | interval
  double radius = 1.0;
  double r_inner = 0.5, r_outer = 1.0;
  double a = -1.0, b = 1.0;
  double d_scale = 1.0;
};

struct RhsSpec {
  std::string kind = "family";  // family | constant | expression | fractional_laplacian_of
  int k = 0;
  std::string g = "disc";  // family: disc | annulus | kite
  double value = 0.0;
  std::string expression;  // expression, or u for fractional_laplacian_of
};

struct Resolution {
  int n = 0;                // 1D
  int nr = 0, nt = 0, nb = 0;  // 2D
};

struct SliceSpec {
  std::array<double, 2> from{-1.0, 0.0}, to{1.0, 0.0};
  int points = 0;  // 0 disables slice.csv
};

struct Tolerances {
  std::optional<double> eps_inf;   // solve1d, solve2d, convergence, oracle
  std::optional<double> residual;  // verify-composition
};

struct RunConfig {
  std::string problem = "solve2d";  // solve1d | solve2d | convergence | oracle | verify-composition
  DomainSpec domain;
  double s = 0.5;
  RhsSpec rhs;
  std::string exact;              // expression of the exact u; "family" for the disc family
  std::string reference = "auto";  // auto | exact | finest | none
  std::vector<Resolution> resolutions;
  std::vector<double> points;                   // oracle: x (1D) or radii (2D)
  std::vector<std::array<double, 2>> targets;  // verify-composition
  double fd_step = 1e-2;
  fl::VolumeQuadOptions quadrature;
  SliceSpec slice;
  Tolerances tolerances;

  void validate() const;  // throws std::invalid_argument
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);
bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace flcli
