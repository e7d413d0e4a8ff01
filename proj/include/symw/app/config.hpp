#pragma once

// Run configuration: a JSON document describing one scenario.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "symw/hamiltonian.hpp"
#include "symw/propagator.hpp"

namespace symw::app {

enum class Mode { Evolve, MixedNull };

enum class Expectation { None, Conservation, NegativeControl, MixedNull };

struct Expect {
  Expectation kind = Expectation::None;
  std::optional<int> sign;                // required initial exchange sign
  double max_dS = 1e-6;                   // max |S(t) - S(0)|
  std::optional<double> max_phase_integral;
  std::optional<double> max_sector_drift;
};

struct DiagnosticsSettings {
  std::size_t record_every = 1;
  int i = 0;
  int j = 1;
  double mask_eps = 1e-6;
  double sign_tol = 1e-6;
  bool phase = true;
  bool sectors = true;
  bool continuity = true;
};

struct InitialState {
  std::string description;
  std::uint64_t seed = 0;  // used by random states only
  std::function<WaveFunction(const GridHandle&, std::uint64_t seed)> build;
};

struct Config {
  std::string name;
  std::string claim;
  GridSpec grid;
  Hamiltonian H;
  bool vector_is_uniform = true;
  InitialState initial;
  Scheme scheme;
  double t_final = 0.0;
  DiagnosticsSettings diagnostics;
  std::size_t checkpoint_every = 0;
  Mode mode = Mode::Evolve;
  int mixed_iters = 200;
  Expect expect;
  nlohmann::json source;  // the document as parsed
};

// Errors are ConfigInvalid with a message starting with the offending field
// path, e.g. "grid.axes[0].points: ...".
Config parse_config(const nlohmann::json& doc);
Config load_config(const std::filesystem::path& path);

}  // namespace symw::app
