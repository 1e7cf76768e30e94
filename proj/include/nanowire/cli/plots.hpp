// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nanowire::cli {

/// Regenerates SVG plots from the CSV files in a result directory:
///   ode.csv, ssa_ensemble.csv, master_moments.csv -> time_series.svg
///   fp.csv                                        -> density_snapshots.svg
///   fp_<scenario>.csv (one or more)               -> scenarios.svg, one panel each
///   phase_field.csv + phase_nullcline.csv (+ phase_trajectories.csv) -> phase_plane.svg
///   overlay.csv                                   -> master_vs_fp.svg
///   oracle_equivalence.csv                        -> oracle_equivalence.svg
/// Returns the written file names. A recognised file lacking a column is a
/// ParseError naming it; a directory with nothing to plot is a ParseError.
std::vector<std::string> emit_plots(const std::filesystem::path& dir);

}  // namespace nanowire::cli
