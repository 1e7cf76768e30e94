// SPDX-License-Identifier: Apache-2.0
#include "nanowire/cli/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "json.hpp"
#include "nanowire/cli/csv.hpp"
#include "nanowire/cli/plots.hpp"
#include "nanowire/cli/svg.hpp"
#include "nanowire/cli/validation.hpp"
#include "nanowire/error.hpp"
#include "nanowire/fokker_planck.hpp"
#include "nanowire/kinetics.hpp"
#include "nanowire/master.hpp"
#include "nanowire/simd/kernels.hpp"
#include "nanowire/ssa.hpp"
#include "nanowire/stability.hpp"

#ifndef NANOWIRE_VERSION
#define NANOWIRE_VERSION "0.0.0"
#endif

namespace nanowire::cli {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) {}

  CsvWriter csv(const std::string& name, std::initializer_list<std::string_view> header) {
    files_.insert(name);
    return CsvWriter(dir_ / name, header);
  }
  void text(const std::string& name, const std::string& content) {
    files_.insert(name);
    write_text_file(dir_ / name, content);
  }
  void add(const std::string& name) { files_.insert(name); }
  const std::set<std::string>& files() const { return files_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::set<std::string> files_;
};

Json complex_pair(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json parameters_json(const KineticParams& k) {
  Json j;
  j["k_plus_per_uM_s"] = k.k_plus;
  j["k_minus_per_s"] = k.k_minus;
  j["delta_m"] = k.delta;
  j["n0"] = k.n0;
  j["x0_m"] = k.x0;
  j["x_l_m"] = k.x_l;
  j["nucleus_size"] = k.nucleus_size;
  j["count_scale_per_uM"] = k.count_scale;
  j["interpretation"] = std::string(to_string(k.interpretation));
  j["propensity"] = std::string(to_string(k.propensity));
  j["initial_concentration_uM"] = k.initial_concentration();
  j["total_count"] = k.total_count();
  j["min_length"] = k.min_length();
  j["max_length"] = k.max_length();
  return j;
}

Json run_ode(const ScenarioConfig& c, Writer& w) {
  const auto& k = c.kinetics;
  const auto states = integrate_ode(k, c.ode.t_end, {c.ode.dt, c.ode.max_halvings});
  auto out = w.csv("ode.csv", {"t_s", "n_uM", "a_uM", "n_relaxation_uM", "n_exact_uM"});
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i % static_cast<std::size_t>(c.ode.output_every) != 0 && i + 1 != states.size()) continue;
    const auto& s = states[i];
    out << s.t << s.n << s.a << analytic_concentration(s.t, k) << exact_concentration(s.t, k);
    out.end_row();
  }
  out.close();
  const auto check = steady_state_check(k, c.ode);
  Json r;
  r["t_end_s"] = states.back().t;
  r["steps"] = states.size() - 1;
  r["final_n_uM"] = states.back().n;
  r["final_a_uM"] = states.back().a;
  r["relative_error_vs_critical"] = check.rk4_rel_error;
  r["relaxation_final_uM"] = check.analytic_final;
  r["relaxation_relative_error_vs_rk4"] = check.analytic_rel_error;
  r["exact_final_uM"] = exact_concentration(states.back().t, k);
  r["mass_drift_uM"] = std::fabs(states.back().n + states.back().a - k.initial_concentration());
  return r;
}

Json run_ssa(const ScenarioConfig& c, Writer& w) {
  const auto& k = c.kinetics;
  const std::uint64_t seed = *c.ssa.seed;
  EnsembleOptions opt;
  opt.samples = c.ssa.samples;
  opt.initial_length = c.ssa.initial_length;
  opt.threads = c.ssa.threads;
  const auto stats = run_ensemble(k, c.ssa.trajectories, c.ssa.t_end, seed, opt);
  auto out = w.csv("ssa_ensemble.csv", {"t", "n_free_mean", "n_free_var", "length_mean", "length_var"});
  for (std::size_t i = 0; i < stats.times.size(); ++i) {
    out << stats.times[i] << stats.n_free_mean[i] << stats.n_free_var[i] << stats.length_mean[i]
        << stats.length_var[i];
    out.end_row();
  }
  out.close();
  if (c.ssa.record_trajectories > 0) {
    auto traj = w.csv("ssa_trajectories.csv", {"trajectory", "t", "n_free", "length"});
    SystemState start = initial_state(k);
    if (c.ssa.initial_length != 0) start.length = c.ssa.initial_length;
    for (std::size_t i = 0; i < c.ssa.record_trajectories; ++i) {
      const auto tr = simulate_trajectory(k, start, c.ssa.t_end, CounterRng::stream_key(seed, i));
      for (const auto& e : tr.events) {
        traj << i << e.t << static_cast<long long>(e.n_free) << static_cast<long long>(e.length);
        traj.end_row();
      }
    }
    traj.close();
  }
  Json r;
  r["seed"] = seed;
  r["trajectories"] = stats.trajectories;
  r["t_end_s"] = c.ssa.t_end;
  r["polymerizations"] = stats.polymerizations;
  r["depolymerizations"] = stats.depolymerizations;
  r["receiver_reached"] = stats.receiver_reached;
  r["final_length_mean"] = stats.length_mean.back();
  r["final_length_var"] = stats.length_var.back();
  r["final_n_free_mean"] = stats.n_free_mean.back();
  r["final_n_free_var"] = stats.n_free_var.back();
  return r;
}

Json run_master(const ScenarioConfig& c, Writer& w) {
  const auto& k = c.kinetics;
  GeneratorOptions g;
  g.state_cap = c.master.state_cap;
  g.initial_length = c.master.initial_length;
  const auto gen = build_generator(k, g);
  std::vector<double> times;
  for (int i = 0; i < c.master.samples; ++i)
    times.push_back(c.master.samples == 1 ? c.master.t_end : c.master.t_end * i / (c.master.samples - 1));
  const std::int64_t start = c.master.initial_length != 0 ? c.master.initial_length : k.min_length();
  MasterOptions mo;
  mo.rtol = c.master.rtol;
  mo.atol = c.master.atol;
  const auto dists = integrate_master(point_mass(k, start), gen, times, mo);
  auto out = w.csv("master.csv", {"t", "i", "probability"});
  auto mom = w.csv("master_moments.csv", {"t_s", "length_mean", "length_var", "receiver_probability"});
  for (const auto& d : dists) {
    for (std::size_t s = 0; s < d.p.size(); ++s) {
      out << d.t << static_cast<long long>(d.first_length + static_cast<std::int64_t>(s)) << d.p[s];
      out.end_row();
    }
    const auto m = mean_and_variance(d);
    mom << d.t << m.mean << m.variance << d.p.back();
    mom.end_row();
  }
  out.close();
  mom.close();
  const auto m = mean_and_variance(dists.back());
  Json r;
  r["states"] = gen.size();
  r["initial_length"] = start;
  r["t_end_s"] = c.master.t_end;
  r["final_length_mean"] = m.mean;
  r["final_length_var"] = m.variance;
  r["receiver_probability"] = dists.back().p.back();
  return r;
}

Json run_fp(const ScenarioConfig& c, Writer& w) {
  struct Named {
    std::string name;
    KineticParams params;
  };
  std::vector<Named> runs;
  if (c.fp.scenarios.empty()) {
    runs.push_back({"", c.kinetics});
  } else {
    for (const auto& s : c.fp.scenarios) {
      KineticParams p = c.kinetics;
      if (s.k_plus) p.k_plus = *s.k_plus;
      if (s.k_minus) p.k_minus = *s.k_minus;
      if (s.n0) p.n0 = *s.n0;
      try {
        p.validate();
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("fp scenario '{}': {}", s.name, e.what()));
      }
      runs.push_back({s.name, p});
    }
  }
  FpOptions opt;
  opt.dt = c.fp.dt;
  opt.mode = c.fp.mode;
  opt.spatial_order = c.fp.spatial_order;
  opt.initial_center = c.fp.initial_center;
  opt.initial_variance = c.fp.initial_variance;

  Json results = Json::array();
  for (const auto& run : runs) {
    const std::string suffix = run.name.empty() ? "" : "_" + run.name;
    const auto sol = solve_fp_pde(run.params, c.fp.grid, c.fp.t_samples, opt);
    const auto coeff = fp_coefficients(run.params);
    auto out = w.csv("fp" + suffix + ".csv", {"t", "x", "p"});
    auto mom = w.csv("fp_moments" + suffix + ".csv",
                     {"t_s", "mass", "mean_m", "variance_m2", "peak_m", "absorbed"});
    Json peaks = Json::array(), variances = Json::array(), means = Json::array();
    for (const auto& f : sol.fields) {
      for (std::size_t j = 0; j < f.x.size(); ++j) {
        out << f.t << f.x[j] << f.p[j];
        out.end_row();
      }
      const auto m = density_moments(f);
      mom << f.t << m.mass << m.mean << m.variance << peak_position(f) << f.absorbed;
      mom.end_row();
      peaks.push_back({{"t_s", f.t}, {"x_m", peak_position(f)}});
      means.push_back({{"t_s", f.t}, {"x_m", m.mean}});
      variances.push_back({{"t_s", f.t}, {"variance_m2", m.variance}});
    }
    out.close();
    mom.close();
    Json r;
    r["scenario"] = run.name.empty() ? "base" : run.name;
    r["k_plus_per_uM_s"] = run.params.k_plus;
    r["k_minus_per_s"] = run.params.k_minus;
    r["n0"] = run.params.n0;
    r["drift_m_per_s"] = coeff.drift;
    r["diffusion_m2_per_s"] = coeff.diffusion;
    r["grid"] = c.fp.grid;
    r["dx_m"] = sol.dx;
    r["dt_s"] = sol.dt;
    r["peclet"] = sol.peclet;
    r["max_mass_drift"] = sol.max_mass_drift;
    r["min_value"] = sol.min_value;
    r["absorbed_final"] = sol.fields.empty() ? 0.0 : sol.fields.back().absorbed;
    r["peak_trajectory"] = peaks;
    r["mean_trajectory"] = means;
    r["variance_trajectory"] = variances;
    r["warnings"] = sol.warnings;
    results.push_back(r);
  }
  Json r;
  r["mode"] = c.fp.mode == CoefficientMode::Frozen ? "frozen" : "dynamic";
  r["spatial_order"] = c.fp.spatial_order;
  r["scenarios"] = results;
  return r;
}

Json run_phase(const ScenarioConfig& c, Writer& w) {
  const auto& k = c.kinetics;
  PhaseGrid grid = default_phase_grid(k);
  grid.n_steps = grid.a_steps = c.phase.grid_steps;
  PhaseOptions opt;
  opt.form = c.phase.form;
  opt.t_end = c.phase.t_end;
  opt.dt = c.phase.dt;
  opt.nullcline_points = c.phase.nullcline_points;
  if (c.phase.starts) opt.starts = *c.phase.starts;
  const bool no_trajectories = c.phase.starts && c.phase.starts->empty();
  PhasePortrait portrait;
  if (no_trajectories) {
    // phase_field treats an empty list as "defaults"; compute field and curve
    // with a throwaway start and drop the trajectory.
    opt.starts = {{k.initial_concentration(), 0.0}};
    opt.t_end = 0.0;
    portrait = phase_field(grid, k, opt);
    portrait.trajectories.clear();
  } else {
    portrait = phase_field(grid, k, opt);
  }

  auto field = w.csv("phase_field.csv", {"n_uM", "a_uM", "dn_dt_uM_per_s", "da_dt_uM_per_s"});
  for (const auto& a : portrait.field) {
    field << a.at.n << a.at.a << a.dn_dt << a.da_dt;
    field.end_row();
  }
  field.close();
  auto curve = w.csv("phase_nullcline.csv", {"a_uM", "n_uM"});
  for (const auto& p : portrait.nullcline_curve) {
    curve << p.a << p.n;
    curve.end_row();
  }
  curve.close();
  auto traj = w.csv("phase_trajectories.csv", {"trajectory", "t_s", "n_uM", "a_uM"});
  Json finals = Json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < portrait.trajectories.size(); ++i) {
    const auto& tr = portrait.trajectories[i];
    for (std::size_t j = 0; j < tr.states.size(); ++j) {
      if (j % static_cast<std::size_t>(c.phase.output_every) != 0 && j + 1 != tr.states.size()) continue;
      traj << i << tr.states[j].t << tr.states[j].n << tr.states[j].a;
      traj.end_row();
    }
    worst = std::max(worst, tr.final_distance);
    finals.push_back({{"start_n_uM", tr.start.n},
                      {"start_a_uM", tr.start.a},
                      {"final_n_uM", tr.states.back().n},
                      {"final_a_uM", tr.states.back().a},
                      {"nullcline_distance_uM", tr.final_distance}});
  }
  traj.close();
  Json r;
  r["form"] = std::string(to_string(portrait.form));
  r["arrows"] = portrait.field.size();
  r["trajectories"] = finals;
  r["max_nullcline_distance_uM"] = worst;
  r["tolerance_uM"] = 1e-3 * k.initial_concentration();
  return r;
}

Json run_validate(const ScenarioConfig& c, Writer& w, bool& passed) {
  const auto rep = run_validation(c);
  passed = rep.all_pass;
  auto table = w.csv("validation.csv", {"check", "layers", "t_s", "metric", "value", "tolerance", "pass"});
  for (const auto& row : rep.rows) {
    table << row.check << row.layers << row.t << row.metric << row.value << row.tolerance
          << (row.pass ? "true" : "false");
    table.end_row();
  }
  table.close();
  auto eq = w.csv("oracle_equivalence.csv", {"t_s", "ssa_length_mean", "master_length_mean"});
  for (std::size_t i = 0; i < rep.equivalence.times.size(); ++i) {
    eq << rep.equivalence.times[i] << rep.equivalence.ssa_mean[i] << rep.equivalence.master_mean[i];
    eq.end_row();
  }
  eq.close();
  auto ov = w.csv("overlay.csv", {"t_s", "x_m", "master_density_per_m", "fp_density_per_m"});
  for (std::size_t k = 0; k < rep.overlay.times.size(); ++k) {
    for (std::size_t i = 0; i < rep.overlay.x[k].size(); ++i) {
      ov << rep.overlay.times[k] << rep.overlay.x[k][i] << rep.overlay.master_density[k][i]
         << rep.overlay.fp_density[k][i];
      ov.end_row();
    }
  }
  ov.close();
  auto dr = w.csv("drift_scenarios.csv",
                  {"scenario", "k_plus_per_uM_s", "k_minus_per_s", "n0", "expected_sign", "ssa_shift",
                   "ssa_se", "ssa_sign", "fp_drift_m_per_s", "fp_shift_m", "fp_sign", "pass"});
  for (const auto& d : rep.drift) {
    dr << d.name << d.k_plus << d.k_minus << d.n0 << d.expected_sign << d.ssa_shift << d.ssa_se << d.ssa_sign
       << d.fp_drift << d.fp_shift << d.fp_sign << (d.pass ? "true" : "false");
    dr.end_row();
  }
  dr.close();

  std::string md = "Cross-layer validation\n======================\n\n";
  md += "| check | layers | t (s) | metric | value | tolerance | pass |\n";
  md += "|---|---|---|---|---|---|---|\n";
  for (const auto& row : rep.rows)
    md += fmt::format("| {} | {} | {:.6g} | {} | {:.6g} | {:.6g} | {} |\n", row.check, row.layers, row.t,
                      row.metric, row.value, row.tolerance, row.pass ? "yes" : "no");
  md += "\n" + half_channel_text(rep.half, c.kinetics);
  w.text("validation_report.md", md);

  Json rows = Json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"check", row.check},
                    {"layers", row.layers},
                    {"t_s", row.t},
                    {"metric", row.metric},
                    {"value", row.value},
                    {"tolerance", row.tolerance},
                    {"pass", row.pass}});
  Json r;
  r["all_pass"] = rep.all_pass;
  r["comparisons"] = rows;
  r["half_channel"] = {{"distance_m", rep.half.distance},
                       {"target_time_s", rep.half.target_time},
                       {"drift_m_per_s", rep.half.drift},
                       {"crossing_time_s", rep.half.crossing_time},
                       {"required_drift_m_per_s", rep.half.required_drift},
                       {"required_rate_per_s", rep.half.required_rate},
                       {"required_n0_uM", rep.half.required_n0},
                       {"implied_count_scale_per_uM", rep.half.implied_count_scale}};
  return r;
}

[[noreturn]] void rethrow_with_context(const Error& e, const ScenarioConfig& c) {
  const std::string msg = fmt::format("scenario '{}' ({}): {}", c.output_dir.generic_string(),
                                      to_string(c.solver), e.what());
  switch (e.category()) {
    case ErrorCategory::Parse: throw ParseError(msg);
    case ErrorCategory::Validation: throw ValidationError(msg);
    case ErrorCategory::Solver: throw SolverError(msg);
    case ErrorCategory::Io: throw IoError(msg);
  }
  throw SolverError(msg);
}

}  // namespace

ResultBundle run_scenario(const ScenarioConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  config.check();
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec || !fs::is_directory(config.output_dir))
    throw IoError(fmt::format("output directory '{}' is not writable: {}", config.output_dir.string(),
                              ec ? ec.message() : "not a directory"));

  Writer w(config.output_dir);
  ResultBundle bundle;
  bundle.dir = config.output_dir;
  const auto& k = config.kinetics;
  Json summary;
  summary["schema_version"] = 1;
  summary["solver"] = std::string(to_string(config.solver));
  Json meta;
  meta["program"] = "nanowire";
  meta["version"] = NANOWIRE_VERSION;
  meta["seed"] = config.ssa.seed ? Json(*config.ssa.seed) : Json(nullptr);
  meta["config"] = serialize_config(config);
  summary["metadata"] = meta;
  summary["parameters"] = parameters_json(k);

  try {
    const double kc = critical_concentration(k);
    const auto coeff = fp_coefficients(k);
    const auto ev = eigenvalues(jacobian(kc, k));
    summary["critical_concentration_uM"] = kc;
    summary["fp_coefficients"] = {{"drift_m_per_s", coeff.drift}, {"diffusion_m2_per_s", coeff.diffusion}};
    summary["stability"] = {{"jacobian_at_n_uM", kc},
                            {"eigenvalues", Json::array({complex_pair(ev.lambda1), complex_pair(ev.lambda2)})},
                            {"classification", std::string(to_string(ev.classification))}};
    summary["steady_state"] = {{"n_uM", kc}, {"a_uM", k.initial_concentration() - kc}};

    Json results;
    switch (config.solver) {
      case Solver::Ode: results = run_ode(config, w); break;
      case Solver::Ssa: results = run_ssa(config, w); break;
      case Solver::Master: results = run_master(config, w); break;
      case Solver::Fp: results = run_fp(config, w); break;
      case Solver::Phase: results = run_phase(config, w); break;
      case Solver::Validate: results = run_validate(config, w, bundle.checks_passed); break;
    }
    summary["results"] = results;
    if (config.plots)
      for (const auto& f : emit_plots(config.output_dir)) w.add(f);
  } catch (const Error& e) {
    rethrow_with_context(e, config);
  }

  w.add("summary.json");
  summary["files"] = std::vector<std::string>(w.files().begin(), w.files().end());
  write_text_file(config.output_dir / "summary.json", summary.dump(2) + "\n");

  bundle.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  Json timing;
  timing["wall_time_s"] = bundle.wall_time;
  timing["simd_backend"] = std::string(simd::to_string(simd::active_backend()));
  write_text_file(config.output_dir / "timing.json", timing.dump(2) + "\n");
  bundle.files.assign(w.files().begin(), w.files().end());
  bundle.files.push_back("timing.json");
  std::sort(bundle.files.begin(), bundle.files.end());
  return bundle;
}

}  // namespace nanowire::cli
