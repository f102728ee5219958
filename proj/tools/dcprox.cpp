#include <iostream>

#include <CLI11.hpp>

#include "dcprox/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"DC minimization with proximal distances"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a config and write the trace CSV and report");
  run->add_option("config", config_path, "Config file")->required();
  auto* list = app.add_subcommand("list", "List built-in instances, kernels and certificates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : dcprox::kExitConfig;
  }

  if (*list) {
    std::cout << dcprox::list_builtins();
    return dcprox::kExitOk;
  }
  (void)run;
  return dcprox::run_config_file(config_path, std::cerr);
}
