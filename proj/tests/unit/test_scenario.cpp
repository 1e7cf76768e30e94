#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "nanowire/cli/config.hpp"
#include "nanowire/cli/scenario.hpp"
#include "nanowire/error.hpp"
#include "nanowire/fokker_planck.hpp"
#include "nanowire/kinetics.hpp"

using namespace nanowire;
using namespace nanowire::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nanowire_unit" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json summary(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "summary.json")); }

ScenarioConfig small(std::string_view yaml, const fs::path& dir) {
  ScenarioConfig c = parse_config(yaml);
  c.output_dir = dir;
  return c;
}

}  // namespace

TEST_CASE("ode scenario records the critical concentration") {
  const fs::path dir = scratch("ode");
  const ResultBundle r = run_scenario(small("ode:\n  t_end: 10\n", dir));
  CHECK(r.checks_passed);
  CHECK(fs::exists(dir / "ode.csv"));
  CHECK(fs::exists(dir / "time_series.svg"));
  const auto j = summary(dir);
  CHECK(j["solver"] == "ode");
  CHECK(j["schema_version"] == 1);
  CHECK(j["critical_concentration_uM"].get<double>() == critical_concentration(KineticParams{}));
  CHECK(j["results"]["final_n_uM"].get<double>() ==
        doctest::Approx(critical_concentration(KineticParams{})).epsilon(1e-3));
  CHECK(j["metadata"]["seed"].is_null());
  CHECK(std::find(r.files.begin(), r.files.end(), "timing.json") != r.files.end());
  CHECK(!j["files"].empty());
}

TEST_CASE("fp summary coefficients match the library") {
  const fs::path dir = scratch("fp");
  ScenarioConfig c = small("solver: fp\nplots: false\nfp:\n  grid: 256\n  t_samples: [0, 0.01]\n", dir);
  run_scenario(c);
  const auto j = summary(dir);
  const FpCoefficients fc = fp_coefficients(c.kinetics);
  CHECK(j["fp_coefficients"]["drift_m_per_s"].get<double>() == fc.drift);
  CHECK(j["fp_coefficients"]["diffusion_m2_per_s"].get<double>() == fc.diffusion);
  const auto& s = j["results"]["scenarios"][0];
  CHECK(s["drift_m_per_s"].get<double>() == fc.drift);
  CHECK(s["grid"] == 256);
  CHECK_FALSE(s["warnings"].empty());  // Peclet > 2 at this grid
  CHECK_FALSE(fs::exists(dir / "density_snapshots.svg"));
}

TEST_CASE("identical configs give identical bytes") {
  const fs::path dir = scratch("det");
  const std::string yaml =
      "solver: ssa\nkinetics:\n  n0: 50\n  x_l: 1.297e-6\n"
      "ssa:\n  seed: 9\n  trajectories: 300\n  samples: 11\n  record_trajectories: 2\n";
  const ResultBundle first = run_scenario(small(yaml, dir));
  std::map<std::string, std::string> bytes;
  for (const std::string& f : first.files) bytes[f] = slurp(dir / f);

  ScenarioConfig again = small(yaml, dir);
  again.ssa.threads = 3;
  const ResultBundle second = run_scenario(again);
  REQUIRE(second.files == first.files);
  for (const std::string& f : second.files) {
    if (f == "timing.json" || f == "summary.json") continue;  // summary echoes threads
    CAPTURE(f);
    CHECK(slurp(dir / f) == bytes[f]);
  }
  run_scenario(small(yaml, dir));
  for (const std::string& f : first.files) {
    if (f == "timing.json") continue;
    CAPTURE(f);
    CHECK(slurp(dir / f) == bytes[f]);
  }
}

TEST_CASE("validate writes the comparison table") {
  const fs::path dir = scratch("validate");
  ScenarioConfig c = small(
      "solver: validate\nplots: false\nssa:\n  seed: 4\n"
      "validate:\n  ssa_trajectories: 200\n  drift_trajectories: 100\n  drift_t_end: 2\n"
      "  fp_grid: 256\n  fp_times: [0.05]\n",
      dir);
  const ResultBundle r = run_scenario(c);
  const std::string report = slurp(dir / "validation_report.md");
  CHECK(report.find("| check |") != std::string::npos);
  CHECK(report.find("50 s") != std::string::npos);
  const auto j = summary(dir);
  CHECK(j["results"]["all_pass"].get<bool>() == r.checks_passed);
  CHECK(j["results"]["comparisons"].size() > 10);
  CHECK(j["results"]["half_channel"]["required_rate_per_s"].get<double>() ==
        doctest::Approx(4e-6 / 50.0 / 11e-9).epsilon(1e-12));
  for (const char* f : {"validation.csv", "oracle_equivalence.csv", "overlay.csv", "drift_scenarios.csv"})
    CHECK(fs::exists(dir / f));
}

TEST_CASE("errors keep their category") {
  ScenarioConfig c = small("ode:\n  max_halvings: 0\n  t_end: 0.01\n", scratch("solver_err"));
  try {
    run_scenario(c);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("scenario") != std::string::npos);
  }

  const fs::path blocker = scratch("blocker");
  fs::create_directories(blocker.parent_path());
  std::ofstream(blocker) << "file";
  ScenarioConfig io = small("ode:\n  t_end: 0.01\n", blocker / "out");
  CHECK_THROWS_AS(run_scenario(io), IoError);
  fs::remove(blocker);
}
