#pragma once

// Experiment runner behind the command-line front end.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symw/app/config.hpp"

namespace symw::app {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2, kExitAcceptance = 3 };

struct RunOptions {
  bool deterministic = false;           // scalar kernels only
  std::optional<std::uint64_t> seed;    // overrides random-state and sampling seeds
};

struct Check {
  std::string name;
  double observed = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">" or "=="
  bool pass = false;
};

struct RunResult {
  std::string verdict;  // PASS, FAIL, NEGATIVE-CONTROL-CONFIRMED or COMPLETED
  bool pass = false;
  std::vector<Check> checks;
  nlohmann::json summary;
};

// Static checks without evolution: grid size, potential symmetry sampling,
// gauge sampling and scheme compatibility. Throws on a validation failure.
nlohmann::json validate(Config& cfg, std::uint64_t seed);

// Runs the scenario and writes timeseries.csv, summary.json, plots and
// checkpoints under out. Throws on failure.
RunResult execute(Config cfg, const std::filesystem::path& out, const RunOptions& options, std::ostream& log);

int run(const std::filesystem::path& config, const std::filesystem::path& out, const RunOptions& options,
        std::ostream& log);
int verify(const std::filesystem::path& config, std::ostream& out, std::ostream& log);

// Bundled scenarios live in SYMW_SCENARIO_DIR when set, else in the source tree.
std::filesystem::path scenario_dir();
std::vector<std::string> gallery_names();
int gallery_list(std::ostream& out, std::ostream& log);
int gallery_run(const std::string& name, const std::filesystem::path& out, const RunOptions& options,
                std::ostream& report, std::ostream& log);

}  // namespace symw::app
