// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nanowire/fokker_planck.hpp"
#include "nanowire/params.hpp"
#include "nanowire/stability.hpp"

namespace nanowire::cli {

enum class Solver { Ode, Ssa, Master, Fp, Phase, Validate };

std::string_view to_string(Solver solver);

struct OdeConfig {
  double t_end = 10.0;
  double dt = 1e-3;
  int max_halvings = 16;
  int output_every = 10;  ///< write every k-th RK4 step
};

struct SsaConfig {
  std::optional<std::uint64_t> seed;
  std::size_t trajectories = 1000;
  double t_end = 0.05;
  int samples = 101;
  std::int64_t initial_length = 0;
  unsigned threads = 0;
  std::size_t record_trajectories = 0;  ///< full event paths written for the first k
};

struct MasterConfig {
  double t_end = 0.05;
  int samples = 11;
  std::size_t state_cap = 100000;
  double rtol = 1e-7;
  double atol = 1e-11;
  std::int64_t initial_length = 0;
};

/// Rate overrides for one panel of a multi-scenario Fokker-Planck run.
struct FpScenario {
  std::string name;
  std::optional<double> k_plus, k_minus, n0;
};

struct FpConfig {
  std::size_t grid = 1024;
  std::vector<double> t_samples{0.1, 0.2, 0.3, 0.4, 0.5};
  double dt = 0.0;
  CoefficientMode mode = CoefficientMode::Frozen;
  int spatial_order = 4;
  std::optional<double> initial_center;
  double initial_variance = 0.0;
  std::vector<FpScenario> scenarios;
};

struct PhaseConfig {
  FieldForm form = FieldForm::Balance;
  double t_end = 10.0;
  double dt = 1e-3;
  int grid_steps = 20;
  int nullcline_points = 200;
  int output_every = 10;  ///< trajectory states written every k-th step
  /// Unset means the five default starts; an empty list plots no trajectories.
  std::optional<std::vector<PhasePoint>> starts;
};

struct ValidateConfig {
  std::size_t ssa_trajectories = 10000;
  std::int64_t small_n_total = 50;
  std::int64_t small_length = 30;
  double small_t_end = 0.05;
  std::vector<double> small_tv_times{0.01, 0.02, 0.04};
  std::int64_t desk_n_total = 200;
  std::vector<double> desk_times{0.02, 0.05, 0.08};
  std::size_t fp_grid = 1024;
  double fp_warmup = 0.05;
  std::vector<double> fp_times{0.1, 0.2, 0.3};
  /// Three-scenario drift check: k+ is set to 2, 1 and 1/2 times k- / n0.
  double drift_k_minus = 1.0;
  double drift_n0 = 100.0;
  std::int64_t drift_initial_length = 54;
  std::int64_t drift_max_length = 200;
  std::size_t drift_trajectories = 4000;
  double drift_t_end = 20.0;
};

struct ScenarioConfig {
  Solver solver = Solver::Ode;
  std::filesystem::path output_dir = "results";
  bool plots = true;
  KineticParams kinetics;
  OdeConfig ode;
  SsaConfig ssa;
  MasterConfig master;
  FpConfig fp;
  PhaseConfig phase;
  ValidateConfig validate;

  /// Throws ValidationError naming the first violated invariant.
  void check() const;
};

/// Parses a YAML document; unknown keys and type mismatches are ParseErrors
/// carrying the line number. The result has been check()ed.
ScenarioConfig parse_config(std::string_view text, const std::string& origin = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

/// YAML with every field spelled out; parse_config(serialize_config(c)) == c
/// field by field, doubles bit-exactly.
std::string serialize_config(const ScenarioConfig& config);

/// Sets one scalar key by dotted path, e.g. "kinetics.k_plus", from text.
void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value);

}  // namespace nanowire::cli
