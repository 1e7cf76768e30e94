#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "nanowire/cli/config.hpp"
#include "nanowire/cli/plots.hpp"
#include "nanowire/cli/scenario.hpp"
#include "nanowire/error.hpp"

using namespace nanowire;
using namespace nanowire::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nanowire_plots" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

fs::path run(const std::string& name, std::string_view yaml) {
  const fs::path dir = scratch(name);
  ScenarioConfig c = parse_config(yaml);
  c.output_dir = dir;
  run_scenario(c);
  return dir;
}

}  // namespace

TEST_CASE("phase plot without trajectories") {
  const fs::path dir = run("phase_empty", "solver: phase\nphase:\n  starts: []\n  grid_steps: 4\n");
  const std::string svg = slurp(dir / "phase_plane.svg");
  CHECK(count(svg, ">nullcline<") == 1);
  CHECK(count(svg, "trajectory") == 0);
  CHECK(count(svg, "<line") >= 25);  // field arrows

  const fs::path with = run("phase_two",
                            "solver: phase\nphase:\n  t_end: 1\n  grid_steps: 4\n"
                            "  starts: [[100, 0], [500, 500]]\n");
  const std::string svg2 = slurp(with / "phase_plane.svg");
  CHECK(count(svg2, ">trajectory 0<") == 1);
  CHECK(count(svg2, ">trajectory 1<") == 1);
  CHECK(count(svg2, ">trajectory 2<") == 0);
}

TEST_CASE("one panel per scenario") {
  const fs::path dir = run("scenarios",
                           "solver: fp\nkinetics:\n  x_l: 3.2e-6\n"
                           "fp:\n  grid: 128\n  t_samples: [0, 1]\n  initial_center: 2.1e-6\n"
                           "  scenarios:\n    - {name: growth, k_plus: 3.32e-4}\n"
                           "    - {name: balance, k_plus: 1.66e-4}\n"
                           "    - {name: decay, k_plus: 0.83e-4}\n");
  const std::string svg = slurp(dir / "scenarios.svg");
  CHECK(count(svg, ">growth<") == 1);
  CHECK(count(svg, ">balance<") == 1);
  CHECK(count(svg, ">decay<") == 1);
  CHECK_FALSE(fs::exists(dir / "density_snapshots.svg"));
}

TEST_CASE("regenerating plots is byte identical") {
  const fs::path dir = run("regen", "ode:\n  t_end: 1\n");
  const std::string before = slurp(dir / "time_series.svg");
  fs::remove(dir / "time_series.svg");
  const auto written = emit_plots(dir);
  REQUIRE(written.size() == 1);
  CHECK(written[0] == "time_series.svg");
  CHECK(slurp(dir / "time_series.svg") == before);
}

TEST_CASE("plot errors") {
  const fs::path empty = scratch("empty");
  CHECK_THROWS_AS(emit_plots(empty), ParseError);
  CHECK_THROWS_AS(emit_plots(empty / "missing"), IoError);

  const fs::path bad = scratch("bad");
  std::ofstream(bad / "ode.csv") << "t_s,n_uM\n0,1\n";
  try {
    emit_plots(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("ode.csv") != std::string::npos);
    CHECK(what.find("missing column") != std::string::npos);
  }
}
