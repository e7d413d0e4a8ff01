#include <CLI11.hpp>
#include <iostream>

#include "symw/app/runner.hpp"

int main(int argc, char** argv) {
  using namespace symw::app;
  CLI::App app{"Configuration-space solver for identical particles with exchange-symmetry diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string scenario;
  bool deterministic = false;
  std::uint64_t seed = 0;

  auto* run_cmd = app.add_subcommand("run", "Evolve a scenario and write diagnostics");
  run_cmd->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_flag("--deterministic", deterministic, "Scalar kernels only, for bitwise-reproducible output");
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Seed for random initial states and sampling");

  auto* verify_cmd = app.add_subcommand("verify", "Validate a configuration without evolving");
  verify_cmd->add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);

  auto* gallery_cmd = app.add_subcommand("gallery", "Bundled scenarios");
  gallery_cmd->require_subcommand(1);
  auto* list_cmd = gallery_cmd->add_subcommand("list", "List bundled scenarios");
  auto* grun_cmd = gallery_cmd->add_subcommand("run", "Run a bundled scenario and check its claim");
  grun_cmd->add_option("name", scenario, "Scenario name")->required();
  grun_cmd->add_option("--out", out_dir, "Output directory")->required();
  grun_cmd->add_flag("--deterministic", deterministic, "Scalar kernels only, for bitwise-reproducible output");
  auto* gseed_opt = grun_cmd->add_option("--seed", seed, "Seed for random initial states and sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  RunOptions options;
  options.deterministic = deterministic;
  if (*seed_opt || *gseed_opt) options.seed = seed;

  if (*run_cmd) return run(config_path, out_dir, options, std::cerr);
  if (*verify_cmd) return verify(config_path, std::cout, std::cerr);
  if (*list_cmd) return gallery_list(std::cout, std::cerr);
  if (*grun_cmd) return gallery_run(scenario, out_dir, options, std::cout, std::cerr);
  return kExitValidation;
}
