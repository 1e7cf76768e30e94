// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nanowire/cli/config.hpp"

namespace nanowire::cli {

/// Files written by one scenario run. Everything except timing.json is a
/// pure function of the config.
struct ResultBundle {
  std::filesystem::path dir;
  std::vector<std::string> files;  ///< sorted, relative to dir
  bool checks_passed = true;       ///< false when a validate run has failing rows
  double wall_time = 0.0;          ///< seconds, also recorded in timing.json
};

/// Runs the selected solver and writes CSV files, summary.json, timing.json
/// and (when config.plots) SVG plots into config.output_dir. Library errors
/// are rethrown in the same category with the scenario named.
ResultBundle run_scenario(const ScenarioConfig& config);

}  // namespace nanowire::cli
