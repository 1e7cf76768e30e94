// SPDX-License-Identifier: Apache-2.0
#include "nanowire/cli/plots.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "nanowire/cli/csv.hpp"
#include "nanowire/cli/svg.hpp"
#include "nanowire/error.hpp"

namespace nanowire::cli {
namespace {

namespace fs = std::filesystem;

// Rows grouped by the value of `key`, in first-appearance order.
std::vector<std::pair<double, std::vector<std::size_t>>> group_by(const std::vector<double>& key) {
  std::vector<std::pair<double, std::vector<std::size_t>>> groups;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (groups.empty() || groups.back().first != key[i]) groups.push_back({key[i], {}});
    groups.back().second.push_back(i);
  }
  return groups;
}

std::vector<double> pick(const std::vector<double>& v, const std::vector<std::size_t>& rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(v[r]);
  return out;
}

// Micrometres read better on axes than metres.
std::vector<double> to_um(std::vector<double> v) {
  for (double& x : v) x *= 1e6;
  return v;
}

Panel density_panel(const CsvTable& t, const std::string& title) {
  const auto time = t.numbers("t"), x = t.numbers("x"), p = t.numbers("p");
  Panel panel{title, "x (um)", "p (1/m)", {}, {}};
  for (const auto& [at, rows] : group_by(time))
    panel.series.push_back({fmt::format("t = {:.3g} s", at), to_um(pick(x, rows)), pick(p, rows)});
  return panel;
}

void time_series(const fs::path& dir, std::vector<std::string>& written) {
  std::vector<Panel> panels;
  if (fs::exists(dir / "ode.csv")) {
    const auto t = CsvTable::read(dir / "ode.csv");
    const auto ts = t.numbers("t_s");
    panels.push_back({"Free monomers", "t (s)", "n (uM)",
                      {{"RK4", ts, t.numbers("n_uM")},
                       {"relaxation form", ts, t.numbers("n_relaxation_uM"), true},
                       {"exact", ts, t.numbers("n_exact_uM"), true}},
                      {}});
    panels.push_back({"Polymerized monomers", "t (s)", "a (uM)", {{"RK4", ts, t.numbers("a_uM")}}, {}});
  }
  if (fs::exists(dir / "ssa_ensemble.csv")) {
    const auto t = CsvTable::read(dir / "ssa_ensemble.csv");
    const auto ts = t.numbers("t");
    panels.push_back({"SSA ensemble", "t (s)", "filament length",
                      {{"mean", ts, t.numbers("length_mean")}, {"variance", ts, t.numbers("length_var"), true}},
                      {}});
    panels.push_back({"SSA free monomers", "t (s)", "n_free", {{"mean", ts, t.numbers("n_free_mean")}}, {}});
  }
  if (fs::exists(dir / "master_moments.csv")) {
    const auto t = CsvTable::read(dir / "master_moments.csv");
    const auto ts = t.numbers("t_s");
    panels.push_back({"Master equation", "t (s)", "filament length",
                      {{"mean", ts, t.numbers("length_mean")}, {"variance", ts, t.numbers("length_var"), true}},
                      {}});
  }
  if (panels.empty()) return;
  write_text_file(dir / "time_series.svg", render_svg(panels, 2, "Time series"));
  written.push_back("time_series.svg");
}

void densities(const fs::path& dir, std::vector<std::string>& written) {
  if (fs::exists(dir / "fp.csv")) {
    const Panel panel = density_panel(CsvTable::read(dir / "fp.csv"), "Fokker-Planck density");
    write_text_file(dir / "density_snapshots.svg", render_svg({&panel, 1}, 1, "Tip position density"));
    written.push_back("density_snapshots.svg");
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.size() > 7 && name.rfind("fp_", 0) == 0 && name.rfind("fp_moments", 0) != 0 &&
        entry.path().extension() == ".csv")
      names.push_back(name);
  }
  if (names.empty()) return;
  std::sort(names.begin(), names.end());
  std::vector<Panel> panels;
  for (const auto& name : names)
    panels.push_back(density_panel(CsvTable::read(dir / name), name.substr(3, name.size() - 7)));
  write_text_file(dir / "scenarios.svg",
                  render_svg(panels, static_cast<int>(std::min<std::size_t>(panels.size(), 3)), "Scenarios"));
  written.push_back("scenarios.svg");
}

void phase_plane(const fs::path& dir, std::vector<std::string>& written) {
  if (!fs::exists(dir / "phase_field.csv")) return;
  const auto f = CsvTable::read(dir / "phase_field.csv");
  Panel panel{"Phase plane", "a (uM)", "n (uM)", {}, {}};
  const auto n = f.numbers("n_uM"), a = f.numbers("a_uM"), dn = f.numbers("dn_dt_uM_per_s"),
             da = f.numbers("da_dt_uM_per_s");
  for (std::size_t i = 0; i < n.size(); ++i) panel.arrows.push_back({a[i], n[i], da[i], dn[i]});
  if (!fs::exists(dir / "phase_nullcline.csv"))
    throw ParseError("phase_field.csv present without phase_nullcline.csv");
  const auto c = CsvTable::read(dir / "phase_nullcline.csv");
  panel.series.push_back({"nullcline", c.numbers("a_uM"), c.numbers("n_uM"), true});
  if (fs::exists(dir / "phase_trajectories.csv")) {
    const auto t = CsvTable::read(dir / "phase_trajectories.csv");
    const auto id = t.numbers("trajectory"), tn = t.numbers("n_uM"), ta = t.numbers("a_uM");
    for (const auto& [which, rows] : group_by(id))
      panel.series.push_back({fmt::format("trajectory {}", static_cast<long long>(which)), pick(ta, rows),
                              pick(tn, rows)});
  }
  write_text_file(dir / "phase_plane.svg", render_svg({&panel, 1}, 1, "Phase plane"));
  written.push_back("phase_plane.svg");
}

void overlay(const fs::path& dir, std::vector<std::string>& written) {
  if (!fs::exists(dir / "overlay.csv")) return;
  const auto t = CsvTable::read(dir / "overlay.csv");
  const auto ts = t.numbers("t_s"), x = t.numbers("x_m"), m = t.numbers("master_density_per_m"),
             f = t.numbers("fp_density_per_m");
  std::vector<Panel> panels;
  for (const auto& [at, rows] : group_by(ts))
    panels.push_back({fmt::format("t = {:.3g} s", at), "x (um)", "density (1/m)",
                      {{"master equation", to_um(pick(x, rows)), pick(m, rows), false, true},
                       {"Fokker-Planck", to_um(pick(x, rows)), pick(f, rows)}},
                      {}});
  write_text_file(dir / "master_vs_fp.svg",
                  render_svg(panels, static_cast<int>(std::min<std::size_t>(panels.size(), 3)),
                             "Master equation vs Fokker-Planck"));
  written.push_back("master_vs_fp.svg");
}

void equivalence(const fs::path& dir, std::vector<std::string>& written) {
  if (!fs::exists(dir / "oracle_equivalence.csv")) return;
  const auto t = CsvTable::read(dir / "oracle_equivalence.csv");
  const auto ts = t.numbers("t_s");
  const Panel panel{"Mean filament length", "t (s)", "length",
                    {{"SSA", ts, t.numbers("ssa_length_mean"), false, true},
                     {"master equation", ts, t.numbers("master_length_mean")}},
                    {}};
  write_text_file(dir / "oracle_equivalence.svg", render_svg({&panel, 1}, 1, "SSA vs master equation"));
  written.push_back("oracle_equivalence.svg");
}

}  // namespace

std::vector<std::string> emit_plots(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError(fmt::format("'{}' is not a directory", dir.string()));
  std::vector<std::string> written;
  time_series(dir, written);
  densities(dir, written);
  phase_plane(dir, written);
  overlay(dir, written);
  equivalence(dir, written);
  if (written.empty()) throw ParseError(fmt::format("'{}' holds no plottable CSV files", dir.string()));
  std::sort(written.begin(), written.end());
  return written;
}

}  // namespace nanowire::cli
