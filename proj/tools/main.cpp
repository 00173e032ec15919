#include <CLI11.hpp>

#include "fl/parallel.hpp"
#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fractional Laplacian Dirichlet solver"};
  std::string config;
  std::string out = "out";
  int threads = 1;
  bool verbose = false;
  app.add_option("--config", config, "JSON run configuration")->required();
  app.add_option("--out", out, "output directory");
  app.add_option("--threads", threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  app.add_flag("--verbose", verbose, "progress on stderr");
  app.set_version_flag("--version", flcli::build_version());
  CLI11_PARSE(app, argc, argv);

  fl::set_num_threads(threads);
  return flcli::run_file(config, {out, verbose});
}
