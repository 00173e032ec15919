#pragma once

#include <filesystem>
#include <string>

#include "run_config.hpp"

namespace flcli {

struct RunOptions {
  std::filesystem::path out_dir = "out";
  bool verbose = false;
};

// 0: all requested tolerances met, 1: a tolerance was missed. Module failures throw.
int run(const RunConfig& config, const RunOptions& opt);

// Loads, validates and runs; failures become error.json in the output directory,
// a JSON line on stderr and exit status 2.
int run_file(const std::string& config_path, const RunOptions& opt);

std::string build_version();

}  // namespace flcli
