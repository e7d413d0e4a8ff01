#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "symw/app/config.hpp"
#include "symw/app/runner.hpp"
#include "symw/checkpoint.hpp"
#include "symw/error.hpp"

namespace symw::app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Workspace : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("symw_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path write(const std::string& name, const json& doc) const {
    const fs::path p = root_ / name;
    std::ofstream(p) << doc.dump(2);
    return p;
  }

  static json small_scenario() {
    return json::parse(R"({
      "name": "small",
      "claim": "S(t) conserved on a small grid",
      "grid": {"particles": 2, "dims": 1, "axis": {"min": -8, "max": 8, "points": 24}},
      "potential": {"type": "sum", "terms": [
        {"type": "harmonic", "omega": 1.0},
        {"type": "pairwise", "kernel": "soft_coulomb", "strength": 1.0, "softening": 1.0}]},
      "initial_state": {"type": "slater", "orbitals": [{"type": "ho", "n": 0}, {"type": "ho", "n": 1}]},
      "scheme": {"kind": "split_operator", "dt": 1e-2},
      "t_final": 0.5,
      "diagnostics": {"record_every": 5},
      "checkpoint_every": 25,
      "expect": {"kind": "conservation", "sign": -1, "max_dS": 1e-6}
    })");
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path root_;
};

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
    return e.what();
  }
  ADD_FAILURE() << "config accepted";
  return {};
}

TEST_F(Workspace, MissingGridIsNamed) {
  json doc = small_scenario();
  doc.erase("grid");
  EXPECT_NE(config_error(doc).find("ConfigInvalid: grid:"), std::string::npos) << config_error(doc);
}

TEST_F(Workspace, NestedErrorsCarryFieldPath) {
  json doc = small_scenario();
  doc["grid"]["axis"]["points"] = -3;
  EXPECT_NE(config_error(doc).find("grid.axis.points"), std::string::npos);
  doc = small_scenario();
  doc["potential"]["terms"][0]["omega"] = 0.0;
  EXPECT_NE(config_error(doc).find("potential.terms[0]"), std::string::npos) << config_error(doc);
  doc = small_scenario();
  doc["scheme"]["kind"] = "leapfrog";
  EXPECT_NE(config_error(doc).find("scheme.kind"), std::string::npos);
}

TEST_F(Workspace, ConfigAcceptsComments) {
  const fs::path p = root_ / "commented.cfg";
  std::ofstream(p) << "// leading comment\n" << small_scenario().dump(2);
  const Config cfg = load_config(p);
  EXPECT_EQ(cfg.name, "small");
  EXPECT_EQ(cfg.grid.axes[0].points, 24u);
}

TEST_F(Workspace, VerifyHarmonicPasses) {
  std::ostringstream out, log;
  EXPECT_EQ(verify(write("ok.cfg", small_scenario()), out, log), kExitOk) << log.str();
  const json report = json::parse(out.str());
  EXPECT_EQ(report["potential"]["certificate"], "ExchangeSymmetric");
  EXPECT_EQ(report["negative_control"], false);
  EXPECT_EQ(report["status"], "OK");
}

TEST_F(Workspace, VerifyFlagsAsymmetricTrap) {
  json doc = small_scenario();
  doc["potential"] = {{"type", "asymmetric"}, {"omega1", 1.0}, {"omega2", 2.0}};
  std::ostringstream out, log;
  EXPECT_EQ(verify(write("asym.cfg", doc), out, log), kExitOk) << log.str();
  const json report = json::parse(out.str());
  EXPECT_EQ(report["potential"]["certificate"], "Asymmetric");
  EXPECT_EQ(report["negative_control"], true);
}

TEST_F(Workspace, VerifyAdvisesImplicitForRotationalField) {
  json doc = small_scenario();
  doc["grid"] = {{"particles", 2}, {"dims", 2}, {"axis", {{"min", -6}, {"max", 6}, {"points", 8}}}};
  doc["vector_potential"] = {{"type", "rotational"}, {"field", 1.0}};
  doc["initial_state"] = json::parse(R"({"type": "slater", "orbitals": [
      {"type": "ho", "n": [0, 0]}, {"type": "ho", "n": [1, 0]}]})");
  std::ostringstream out, log;
  EXPECT_EQ(verify(write("rot.cfg", doc), out, log), kExitValidation);
  EXPECT_NE(log.str().find("implicit_fd"), std::string::npos) << log.str();
  doc["scheme"]["kind"] = "implicit_fd";
  std::ostringstream out2, log2;
  EXPECT_EQ(verify(write("rot2.cfg", doc), out2, log2), kExitOk) << log2.str();
}

TEST_F(Workspace, RunWritesArtifacts) {
  std::ostringstream log;
  const fs::path out = root_ / "out";
  ASSERT_EQ(run(write("small.cfg", small_scenario()), out, {}, log), kExitOk) << log.str();
  for (const char* f : {"timeseries.csv", "summary.json", "overlap.svg", "sectors.svg", "residuals.svg"})
    EXPECT_TRUE(fs::exists(out / f)) << f;

  const json summary = json::parse(slurp(out / "summary.json"));
  EXPECT_EQ(summary["verdict"], "PASS");
  EXPECT_EQ(summary["pass"], true);
  EXPECT_EQ(summary["sign_persistence"]["initial_sign"], -1);
  EXPECT_EQ(summary["sign_persistence"]["persistent"], true);
  EXPECT_LE(summary["final_S_drift"].get<double>(), 1e-6);
  EXPECT_EQ(summary["claim"], "S(t) conserved on a small grid");
  EXPECT_TRUE(summary.contains("claims_table"));

  std::istringstream csv(slurp(out / "timeseries.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.substr(0, 12), "t,norm,re_S,");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 11u);

  std::size_t checkpoints = 0;
  for (const auto& e : fs::directory_iterator(out / "checkpoints")) {
    const WaveFunction psi = read_checkpoint(e.path());
    EXPECT_EQ(psi.size(), 24u * 24u);
    EXPECT_NEAR(norm(psi), 1.0, 1e-12);
    ++checkpoints;
  }
  EXPECT_EQ(checkpoints, 3u);
  EXPECT_TRUE(fs::exists(out / "checkpoints" / "psi_step000000050.bin"));
}

TEST_F(Workspace, CheckpointCadenceMustFollowRecords) {
  json doc = small_scenario();
  doc["checkpoint_every"] = 7;
  std::ostringstream log;
  EXPECT_EQ(run(write("bad.cfg", doc), root_ / "out", {}, log), kExitValidation);
  EXPECT_NE(log.str().find("checkpoint_every"), std::string::npos);
}

TEST_F(Workspace, DeterministicRerunsAreBitwiseIdentical) {
  json doc = small_scenario();
  doc["initial_state"] = {{"type", "random"}, {"seed", 3}};
  doc["grid"]["boundary"] = "periodic";
  doc.erase("expect");
  const fs::path cfg = write("rand.cfg", doc);
  std::ostringstream log;
  RunOptions options{.deterministic = true, .seed = 99};
  ASSERT_EQ(run(cfg, root_ / "a", options, log), kExitOk) << log.str();
  ASSERT_EQ(run(cfg, root_ / "b", options, log), kExitOk) << log.str();
  const std::string a = slurp(root_ / "a" / "timeseries.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(root_ / "b" / "timeseries.csv"));
  const json summary = json::parse(slurp(root_ / "a" / "summary.json"));
  EXPECT_EQ(summary["kernels"], "scalar");
  EXPECT_EQ(summary["seed"], 99);

  ASSERT_EQ(run(cfg, root_ / "c", {.deterministic = true, .seed = 100}, log), kExitOk);
  EXPECT_NE(a, slurp(root_ / "c" / "timeseries.csv"));
}

TEST_F(Workspace, RuntimeFailureExitsWithTwo) {
  json doc = small_scenario();
  // Packet swings out of the trap into the wall layers.
  doc["grid"]["axis"]["points"] = 64;
  doc["initial_state"] = json::parse(R"({"type": "gaussian", "center": [2, -2], "width": 0.7, "momentum": [8, -8]})");
  doc["t_final"] = 2.0;
  doc["checkpoint_every"] = 0;
  std::ostringstream log;
  EXPECT_EQ(run(write("wall.cfg", doc), root_ / "out", {}, log), kExitRuntime);
  EXPECT_NE(log.str().find("at t="), std::string::npos) << log.str();
}

TEST_F(Workspace, UnreadableConfigIsIoFailure) {
  std::ostringstream log;
  EXPECT_EQ(run(root_ / "missing.cfg", root_ / "out", {}, log), kExitRuntime);
  EXPECT_NE(log.str().find("error:"), std::string::npos);
}

TEST(Gallery, ListsBundledScenarios) {
  const auto names = gallery_names();
  EXPECT_GE(names.size(), 6u);
  for (const char* n : {"boson_harmonic", "fermion_harmonic", "interacting_pair", "mixed_null", "em_uniform_A",
                        "broken_symmetry"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  std::ostringstream out, log;
  EXPECT_EQ(gallery_list(out, log), kExitOk) << log.str();
  EXPECT_NE(out.str().find("mixed_null\t"), std::string::npos);
}

TEST(Gallery, EveryScenarioVerifies) {
  for (const std::string& name : gallery_names()) {
    std::ostringstream out, log;
    EXPECT_EQ(verify(scenario_dir() / (name + ".cfg"), out, log), kExitOk) << name << ": " << log.str();
  }
}

TEST_F(Workspace, UnknownScenarioIsValidationFailure) {
  std::ostringstream report, log;
  EXPECT_EQ(gallery_run("no_such_scenario", root_, {}, report, log), kExitValidation);
  EXPECT_NE(log.str().find("no_such_scenario"), std::string::npos);
}

TEST_F(Workspace, MixedNullScenarioPasses) {
  std::ostringstream report, log;
  EXPECT_EQ(gallery_run("mixed_null", root_ / "out", {}, report, log), kExitOk) << log.str();
  EXPECT_NE(report.str().find("verdict: PASS"), std::string::npos) << report.str();
  EXPECT_TRUE(fs::exists(root_ / "out" / "decay.csv"));
}

TEST_F(Workspace, BrokenSymmetryIsConfirmedNegativeControl) {
  std::ostringstream report, log;
  EXPECT_EQ(gallery_run("broken_symmetry", root_ / "out", {}, report, log), kExitOk) << log.str();
  const json summary = json::parse(slurp(root_ / "out" / "summary.json"));
  EXPECT_EQ(summary["verdict"], "NEGATIVE-CONTROL-CONFIRMED");
  EXPECT_GT(summary["sign_persistence"]["first_violation_time"].get<double>(), 0.0);
  EXPECT_GT(summary["final_S_drift"].get<double>(), 1e-3);
}

TEST_F(Workspace, FailedExpectationExitsWithThree) {
  json doc = small_scenario();
  doc["name"] = "claims_symmetry";
  doc["potential"] = {{"type", "asymmetric"}, {"omega1", 1.0}, {"omega2", 2.0}};
  write("claims_symmetry.cfg", doc);
  const char* previous = std::getenv("SYMW_SCENARIO_DIR");
  const std::string saved = previous ? previous : "";
  setenv("SYMW_SCENARIO_DIR", root_.c_str(), 1);
  std::ostringstream report, log;
  const int code = gallery_run("claims_symmetry", root_ / "out", {}, report, log);
  if (previous)
    setenv("SYMW_SCENARIO_DIR", saved.c_str(), 1);
  else
    unsetenv("SYMW_SCENARIO_DIR");
  EXPECT_EQ(code, kExitAcceptance) << log.str();
  EXPECT_NE(report.str().find("FAIL"), std::string::npos);
  const json summary = json::parse(slurp(root_ / "out" / "summary.json"));
  EXPECT_EQ(summary["pass"], false);
}

}  // namespace
}  // namespace symw::app
