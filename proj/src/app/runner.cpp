#include "symw/app/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "symw/app/plot.hpp"
#include "symw/checkpoint.hpp"
#include "symw/diagnostics.hpp"
#include "symw/error.hpp"
#include "symw/oracle.hpp"
#include "symw/symmetry.hpp"

#ifndef SYMW_SCENARIO_DIR
#define SYMW_SCENARIO_DIR "scenarios"
#endif

namespace symw::app {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::size_t kSymmetrySamples = 256;
constexpr std::size_t kGaugeSamples = 64;
constexpr int kOracleGridPoints = 12;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Check check_le(std::string name, double observed, double threshold) {
  return {std::move(name), observed, threshold, "<=", std::isfinite(observed) && observed <= threshold};
}

Check check_gt(std::string name, double observed, double threshold) {
  return {std::move(name), observed, threshold, ">", std::isfinite(observed) && observed > threshold};
}

Check check_eq(std::string name, double observed, double expected) {
  return {std::move(name), observed, expected, "==", observed == expected};
}

json to_json(const Check& c) {
  return {{"check", c.name},
          {"observed", c.observed},
          {"threshold", c.threshold},
          {"relation", c.relation},
          {"result", c.pass ? "PASS" : "FAIL"}};
}

json grid_json(const Grid& g) {
  json axes = json::array();
  for (const Axis& a : g.spec().axes) axes.push_back({{"min", a.min}, {"max", a.max}, {"points", a.points}});
  return {{"particles", g.num_particles()},
          {"dims", g.dims()},
          {"axes", axes},
          {"boundary", g.boundary() == Boundary::Periodic ? "periodic" : "dirichlet"},
          {"points", g.size()},
          {"bytes", g.size() * sizeof(cplx)}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) raise(ErrorCode::IoError, "write failed for " + path.string());
}

void write_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& records) {
  std::string text = csv_header() + "\n";
  for (const DiagnosticsRecord& r : records) text += csv_row(r) + "\n";
  write_text(path, text);
}

std::uint64_t effective_seed(const Config& cfg, const RunOptions& options) {
  return options.seed.value_or(cfg.initial.seed);
}

std::string verdict_for(const Config& cfg, const std::vector<Check>& checks, bool& pass) {
  pass = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  switch (cfg.expect.kind) {
    case Expectation::None: return "COMPLETED";
    case Expectation::NegativeControl: return pass ? "NEGATIVE-CONTROL-CONFIRMED" : "FAIL";
    default: return pass ? "PASS" : "FAIL";
  }
}

json claims_table(const Config& cfg, const std::vector<Check>& checks) {
  json rows = json::array();
  for (const Check& c : checks) {
    json row = to_json(c);
    row["claim"] = cfg.claim;
    rows.push_back(std::move(row));
  }
  return rows;
}

RunResult execute_mixed(const Config& cfg, const GridHandle& grid, const fs::path& out, const RunOptions& options,
                        std::ostream& log) {
  const std::uint64_t seed = effective_seed(cfg, options);
  const WaveFunction psi0 = cfg.initial.build(grid, seed).normalized();
  log << "mixed-symmetry check: " << cfg.mixed_iters << " rounds on " << grid->size() << " points\n";
  const DecayReport decay = mixed_symmetry_null_check(psi0, cfg.mixed_iters);

  GridSpec small = grid->spec();
  small.axes.assign(small.dims_per_particle, Axis{small.axes[0].min, small.axes[0].max, kOracleGridPoints});
  double radius = std::nan("");
  if (small.total_points() <= kOracleMaxPoints) radius = projector_product_spectral_radius(build_grid(small));

  std::string csv = "round,norm\n";
  Series series{"norm", {}, {}};
  for (std::size_t k = 0; k < decay.norms.size(); ++k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, decay.norms[k]);
    csv += buf;
    series.x.push_back(static_cast<double>(k));
    series.y.push_back(decay.norms[k]);
  }
  write_text(out / "decay.csv", csv);
  write_svg(out / "decay.svg", {"Alternating projection decay", "round", "norm", true}, {series});

  Hamiltonian free;
  DiagnosticsOptions dopts;
  dopts.continuity = false;
  write_csv(out / "timeseries.csv", {make_recorder(free, dopts)(0.0, psi0, nullptr, 0.0)});

  std::vector<Check> checks;
  if (cfg.expect.kind == Expectation::MixedNull) {
    checks.push_back(check_le("final norm after alternating projections", decay.final_norm, kMixedNullThreshold));
    if (std::isfinite(radius))
      checks.push_back(check_le("projector-product spectral radius on the oracle grid", radius, 1.0 - 1e-6));
  }
  RunResult result;
  result.checks = checks;
  result.verdict = verdict_for(cfg, checks, result.pass);
  result.summary = {{"mode", "mixed_null"},
                    {"iterations", cfg.mixed_iters},
                    {"seed", seed},
                    {"final_norm", decay.final_norm},
                    {"decay_verdict", std::string(to_string(decay.verdict))},
                    {"oracle_spectral_radius", radius},
                    {"oracle_grid_points", kOracleGridPoints}};
  return result;
}

RunResult execute_evolve(const Config& cfg, const GridHandle& grid, const fs::path& out, const RunOptions& options,
                         std::ostream& log) {
  const std::uint64_t seed = effective_seed(cfg, options);
  const WaveFunction raw = cfg.initial.build(grid, seed);
  const double raw_norm = norm(raw);
  const WaveFunction psi0 = raw.normalized();

  DiagnosticsOptions dopts;
  dopts.i = cfg.diagnostics.i;
  dopts.j = cfg.diagnostics.j;
  dopts.mask_eps = cfg.diagnostics.mask_eps;
  dopts.sign_tol = cfg.diagnostics.sign_tol;
  dopts.phase = cfg.diagnostics.phase;
  dopts.sectors = cfg.diagnostics.sectors;
  dopts.continuity = cfg.diagnostics.continuity;

  EvolveOptions eopts;
  eopts.record_every = cfg.diagnostics.record_every;
  eopts.snapshot_every = cfg.checkpoint_every;
  eopts.recorder = make_recorder(cfg.H, dopts);

  log << "evolving " << cfg.name << ": " << grid->size() << " points, " << to_string(cfg.scheme.kind)
      << ", dt=" << cfg.scheme.dt << ", t_final=" << cfg.t_final << "\n";
  Trajectory traj;
  try {
    traj = evolve(psi0, cfg.H, cfg.scheme, cfg.t_final, eopts);
  } catch (const Error& e) {
    raise(ErrorCode::RuntimeFailure, e.what());
  }

  write_csv(out / "timeseries.csv", traj.records);
  if (!traj.snapshots.empty()) {
    fs::create_directories(out / "checkpoints");
    for (const Snapshot& s : traj.snapshots) {
      char name[64];
      std::snprintf(name, sizeof name, "psi_step%09zu.bin",
                    static_cast<std::size_t>(std::llround(s.t / cfg.scheme.dt)));
      write_checkpoint(out / "checkpoints" / name, s.psi);
    }
  }

  const PersistenceReport persistence = sign_persistence(traj, cfg.expect.max_dS);
  double norm_drift = 0.0, max_residual = 0.0, max_phase = 0.0, sector_drift = 0.0, max_boundary = 0.0;
  const DiagnosticsRecord& first = traj.records.front();
  for (const DiagnosticsRecord& r : traj.records) {
    norm_drift = std::max(norm_drift, std::abs(r.norm - 1.0));
    if (std::isfinite(r.continuity_residual)) max_residual = std::max(max_residual, r.continuity_residual);
    if (std::isfinite(r.phase_grad_integral)) max_phase = std::max(max_phase, r.phase_grad_integral);
    if (std::isfinite(r.sector_sym))
      sector_drift = std::max({sector_drift, std::abs(r.sector_sym - first.sector_sym),
                               std::abs(r.sector_anti - first.sector_anti)});
    max_boundary = std::max(max_boundary, r.boundary_mass);
  }

  std::vector<Check> checks;
  if (cfg.expect.kind == Expectation::Conservation) {
    checks.push_back(check_le("max |S(t) - S(0)|", persistence.max_overlap_drift, cfg.expect.max_dS));
    const bool sign_kept = std::none_of(persistence.violations.begin(), persistence.violations.end(),
                                        [](const PersistenceViolation& v) {
                                          return v.kind == PersistenceViolation::Kind::SignChanged;
                                        });
    checks.push_back(check_eq("exchange sign persistent", sign_kept ? 1.0 : 0.0, 1.0));
    if (cfg.expect.sign)
      checks.push_back(check_eq("initial exchange sign", persistence.initial_sign, *cfg.expect.sign));
    if (cfg.expect.max_phase_integral)
      checks.push_back(check_le("max phase-gradient integral", max_phase, *cfg.expect.max_phase_integral));
    if (cfg.expect.max_sector_drift)
      checks.push_back(check_le("max sector-weight drift", sector_drift, *cfg.expect.max_sector_drift));
  } else if (cfg.expect.kind == Expectation::NegativeControl) {
    checks.push_back(check_gt("max |S(t) - S(0)|", persistence.max_overlap_drift, cfg.expect.max_dS));
    checks.push_back(check_gt("first violation time", persistence.first_violation_time(), 0.0));
  }

  std::vector<double> t, reS, imS, sym, anti, res, phase;
  for (const DiagnosticsRecord& r : traj.records) {
    t.push_back(r.t);
    reS.push_back(r.S.real());
    imS.push_back(r.S.imag());
    sym.push_back(r.sector_sym);
    anti.push_back(r.sector_anti);
    res.push_back(r.continuity_residual);
    phase.push_back(r.phase_grad_integral);
  }
  write_svg(out / "overlap.svg", {"Exchange overlap S(t)", "t", "S"}, {{"Re S", t, reS}, {"Im S", t, imS}});
  write_svg(out / "sectors.svg", {"Sector weights", "t", "weight"}, {{"symmetric", t, sym}, {"antisymmetric", t, anti}});
  write_svg(out / "residuals.svg", {"Residuals", "t", "value", true},
            {{"continuity residual", t, res}, {"phase-gradient integral", t, phase}});

  json violations = json::array();
  for (const PersistenceViolation& v : persistence.violations)
    violations.push_back({{"kind", v.kind == PersistenceViolation::Kind::SignChanged ? "sign_changed" : "overlap_drift"},
                          {"t", v.t},
                          {"detail", v.detail}});

  RunResult result;
  result.checks = checks;
  result.verdict = verdict_for(cfg, checks, result.pass);
  result.summary = {
      {"mode", "evolve"},
      {"seed", seed},
      {"initial_state", {{"type", cfg.initial.description}, {"norm_before_normalization", raw_norm}}},
      {"final_S_drift", persistence.max_overlap_drift},
      {"initial_S", {{"re", persistence.initial_S.real()}, {"im", persistence.initial_S.imag()}}},
      {"max_norm_drift", norm_drift},
      {"max_continuity_residual", max_residual},
      {"max_phase_gradient_integral", max_phase},
      {"max_sector_drift", sector_drift},
      {"max_boundary_mass", max_boundary},
      {"sign_persistence",
       {{"initial_sign", persistence.initial_sign},
        {"persistent", persistence.persistent()},
        {"first_violation_time", persistence.first_violation_time()},
        {"records_checked", persistence.records_checked},
        {"violations", violations}}},
      {"convergence",
       {{"scheme", std::string(to_string(cfg.scheme.kind))},
        {"kinetic", std::string(to_string(cfg.scheme.kinetic))},
        {"dt", cfg.scheme.dt},
        {"t_final", cfg.t_final},
        {"steps", traj.steps},
        {"records", traj.records.size()},
        {"solver_tol", cfg.scheme.solver_tol},
        {"max_solver_iterations", traj.max_solver_iterations}}},
      {"checkpoints", traj.snapshots.size()}};
  return result;
}

}  // namespace

json validate(Config& cfg, std::uint64_t seed) {
  const GridHandle grid = build_grid(cfg.grid);
  json report;
  report["name"] = cfg.name;
  report["grid"] = grid_json(*grid);
  if (cfg.mode == Mode::MixedNull) {
    report["mode"] = "mixed_null";
    report["status"] = "OK";
    return report;
  }
  report["mode"] = "evolve";

  const SymmetryReport sym = verify_exchange_symmetry(cfg.H.scalar, *grid, kSymmetrySamples, seed, cfg.t_final);
  json potential = {{"description", cfg.H.scalar.description},
                    {"certificate", std::string(to_string(cfg.H.scalar.certificate))},
                    {"samples", sym.samples},
                    {"failures", sym.failures},
                    {"max_violation", sym.max_violation}};
  if (!sym.passed) {
    potential["witness"] = sym.witness;
    potential["witness_pair"] = {sym.witness_i, sym.witness_j};
  }
  report["potential"] = potential;
  report["negative_control"] = !sym.passed;

  if (cfg.H.vector) {
    const GaugeReport gauge = verify_coulomb_gauge(*cfg.H.vector, cfg.grid, kGaugeSamples, seed, cfg.t_final);
    report["vector_potential"] = {{"description", cfg.H.vector->description},
                                  {"profile", cfg.vector_is_uniform ? "uniform" : "general"},
                                  {"certificate", std::string(to_string(cfg.H.vector->gauge_certificate))},
                                  {"samples", gauge.samples},
                                  {"max_divergence", gauge.max_divergence}};
    if (!gauge.passed) raise(ErrorCode::GaugeNotVerified, "vector_potential: divergence check failed");
    if (!cfg.vector_is_uniform && cfg.scheme.kind == SchemeKind::SplitOperator)
      raise(ErrorCode::NonUniformVectorPotential,
            "scheme.kind: a non-uniform vector potential needs implicit_fd; the split-operator path only handles "
            "uniform A");
  }

  if (cfg.checkpoint_every % cfg.diagnostics.record_every != 0)
    raise(ErrorCode::ConfigInvalid, "checkpoint_every: must be a multiple of diagnostics.record_every");

  const WaveFunction psi0 = cfg.initial.build(grid, seed).normalized();
  const double bm = boundary_mass(psi0);
  report["initial_state"] = {{"type", cfg.initial.description}, {"boundary_mass", bm}};
  if (cfg.scheme.kind == SchemeKind::SplitOperator && grid->boundary() == Boundary::Dirichlet &&
      bm > kBoundaryMassThreshold)
    raise(ErrorCode::BoundaryMassTooLarge,
          "initial_state: boundary mass " + sci(bm) + " too large for split_operator on a Dirichlet grid; use implicit_fd");
  report["scheme"] = {{"kind", std::string(to_string(cfg.scheme.kind))}, {"dt", cfg.scheme.dt}};
  report["status"] = "OK";
  return report;
}

RunResult execute(Config cfg, const fs::path& out, const RunOptions& options, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const Isa previous_isa = active_isa();
  if (options.deterministic) set_active_isa(Isa::Scalar);
  struct RestoreIsa {
    Isa isa;
    ~RestoreIsa() { set_active_isa(isa); }
  } restore{previous_isa};

  const std::uint64_t seed = effective_seed(cfg, options);
  json validation = validate(cfg, seed);
  fs::create_directories(out);
  const GridHandle grid = build_grid(cfg.grid);
  RunResult result = cfg.mode == Mode::MixedNull ? execute_mixed(cfg, grid, out, options, log)
                                                 : execute_evolve(cfg, grid, out, options, log);

  json& s = result.summary;
  s["name"] = cfg.name;
  s["claim"] = cfg.claim;
  s["verdict"] = result.verdict;
  s["pass"] = result.pass;
  s["checks"] = json::array();
  for (const Check& c : result.checks) s["checks"].push_back(to_json(c));
  s["claims_table"] = claims_table(cfg, result.checks);
  s["validation"] = validation;
  s["deterministic"] = options.deterministic;
  s["kernels"] = std::string(to_string(active_isa()));
  s["config"] = cfg.source;
  s["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_text(out / "summary.json", s.dump(2) + "\n");
  log << cfg.name << ": " << result.verdict << "\n";
  return result;
}

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::RuntimeFailure:
    case ErrorCode::IoError: return kExitRuntime;
    default: return kExitValidation;
  }
}

template <class F>
int guarded_main(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int run(const fs::path& config, const fs::path& out, const RunOptions& options, std::ostream& log) {
  return guarded_main(log, [&] {
    execute(load_config(config), out, options, log);
    return int{kExitOk};
  });
}

int verify(const fs::path& config, std::ostream& out, std::ostream& log) {
  return guarded_main(log, [&] {
    Config cfg = load_config(config);
    out << validate(cfg, cfg.initial.seed).dump(2) << "\n";
    return int{kExitOk};
  });
}

fs::path scenario_dir() {
  if (const char* env = std::getenv("SYMW_SCENARIO_DIR"); env && *env) return env;
  return SYMW_SCENARIO_DIR;
}

std::vector<std::string> gallery_names() {
  std::vector<std::string> names;
  const fs::path dir = scenario_dir();
  if (!fs::is_directory(dir)) return names;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

int gallery_list(std::ostream& out, std::ostream& log) {
  return guarded_main(log, [&] {
    for (const std::string& name : gallery_names()) {
      const Config cfg = load_config(scenario_dir() / (name + ".cfg"));
      out << name << "\t" << cfg.claim << "\n";
    }
    return int{kExitOk};
  });
}

int gallery_run(const std::string& name, const fs::path& out, const RunOptions& options, std::ostream& report,
                std::ostream& log) {
  return guarded_main(log, [&] {
    const auto names = gallery_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      raise(ErrorCode::UnknownScenario, "no bundled scenario named '" + name + "'");
    const RunResult result = execute(load_config(scenario_dir() / (name + ".cfg")), out, options, log);
    report << "scenario: " << name << "\n";
    report << "claim: " << result.summary.value("claim", "") << "\n";
    report << "check | observed | threshold | result\n";
    for (const Check& c : result.checks)
      report << c.name << " | " << sci(c.observed) << " | " << c.relation << " " << sci(c.threshold) << " | "
             << (c.pass ? "PASS" : "FAIL") << "\n";
    report << "verdict: " << result.verdict << "\n";
    return result.pass ? int{kExitOk} : int{kExitAcceptance};
  });
}

}  // namespace symw::app
