// SPDX-License-Identifier: Apache-2.0
#include "nanowire/cli/validation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "nanowire/fokker_planck.hpp"
#include "nanowire/kinetics.hpp"
#include "nanowire/master.hpp"
#include "nanowire/rng.hpp"
#include "nanowire/ssa.hpp"

namespace nanowire::cli {
namespace {

KineticParams with_count(KineticParams p, double n_total) {
  p.n0 = n_total;
  p.count_scale = 1.0;
  p.interpretation = CountInterpretation::Concentration;
  return p;
}

int sign_of(double value, double threshold) {
  if (value > threshold) return 1;
  if (value < -threshold) return -1;
  return 0;
}

// Composite Simpson moments of the closed-form density at time t.
std::pair<double, double> analytic_moments(const KineticParams& p, double t) {
  const auto c = fp_coefficients(p);
  const double mean = p.x0 + c.drift * t, sd = std::sqrt(2.0 * c.diffusion * t);
  const int panels = 20000;
  const double lo = mean - 12.0 * sd, h = 24.0 * sd / panels;
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double x = lo + h * i;
    const double f = w * analytic_density(x, t, p);
    const double u = x - p.x0;
    m0 += f;
    m1 += f * u;
    m2 += f * u * u;
  }
  const double mu = m1 / m0;
  return {p.x0 + mu, m2 / m0 - mu * mu};
}

}  // namespace

SteadyStateCheck steady_state_check(const KineticParams& params, const OdeConfig& ode) {
  SteadyStateCheck s;
  s.k = critical_concentration(params);
  const auto states = integrate_ode(params, ode.t_end, {ode.dt, ode.max_halvings});
  s.rk4_final = states.back().n;
  s.analytic_final = analytic_concentration(states.back().t, params);
  s.rk4_rel_error = std::fabs(s.rk4_final - s.k) / s.k;
  s.analytic_rel_error = std::fabs(s.analytic_final - s.rk4_final) / s.rk4_final;
  s.exact_at_zero = analytic_concentration(0.0, params) == states.front().n;
  return s;
}

OracleEquivalence ssa_vs_master(const KineticParams& base, const ValidateConfig& v,
                                std::uint64_t seed, unsigned threads) {
  OracleEquivalence r;
  r.params = with_max_length(with_count(base, static_cast<double>(v.small_n_total)), v.small_length);
  const int grid = 50;
  for (int k = 0; k <= grid; ++k) r.times.push_back(v.small_t_end * k / grid);
  r.times.insert(r.times.end(), v.small_tv_times.begin(), v.small_tv_times.end());
  std::sort(r.times.begin(), r.times.end());
  r.times.erase(std::unique(r.times.begin(), r.times.end()), r.times.end());

  EnsembleOptions opt;
  opt.sample_times = r.times;
  opt.histograms = true;
  opt.threads = threads;
  const double t_end = r.times.back();
  const auto ssa = run_ensemble(r.params, v.ssa_trajectories, t_end, seed, opt);
  const auto me = integrate_master(point_mass(r.params, r.params.min_length()),
                                   build_generator(r.params), r.times);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const double m = mean_and_variance(me[k]).mean;
    r.ssa_mean.push_back(ssa.length_mean[k]);
    r.master_mean.push_back(m);
    r.max_mean_rel_error = std::max(r.max_mean_rel_error, std::fabs(ssa.length_mean[k] - m) / m);
    if (std::find(v.small_tv_times.begin(), v.small_tv_times.end(), r.times[k]) != v.small_tv_times.end()) {
      r.tv_times.push_back(r.times[k]);
      r.tv.push_back(total_variation(ssa.length_distribution(k), me[k].p));
    }
  }
  return r;
}

MasterFpOverlay master_vs_fp(const KineticParams& base, const ValidateConfig& v) {
  MasterFpOverlay r;
  KineticParams p = with_count(base, static_cast<double>(v.desk_n_total));
  p.propensity = PropensityModel::Linear;
  p = with_max_length(p, p.min_length() + v.desk_n_total);
  r.params = p;
  r.times = v.desk_times;
  const auto me = integrate_master(point_mass(p, p.min_length()), build_generator(p), r.times);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const double t = r.times[k];
    const auto& pm = me[k].p;
    std::vector<double> q(pm.size()), x(pm.size());
    double q_sum = 0.0;
    for (std::size_t i = 0; i < pm.size(); ++i) {
      x[i] = p.x0 + static_cast<double>(i) * p.delta;
      q[i] = t > 0.0 ? analytic_density(x[i], t, p) : (i == 0 ? 1.0 : 0.0);
      q_sum += q[i];
    }
    std::vector<double> q_mass(pm.size()), master_density(pm.size()), fp_density(pm.size());
    for (std::size_t i = 0; i < pm.size(); ++i) {
      q_mass[i] = q[i] / q_sum;
      master_density[i] = pm[i] / p.delta;
      fp_density[i] = q_mass[i] / p.delta;
    }
    r.tv.push_back(total_variation(pm, q_mass));
    const auto argmax = [&](const std::vector<double>& a) {
      return p.min_length() + static_cast<std::int64_t>(std::max_element(a.begin(), a.end()) - a.begin());
    };
    r.master_mode.push_back(argmax(pm));
    r.fp_mode.push_back(argmax(q_mass));
    r.x.push_back(std::move(x));
    r.master_density.push_back(std::move(master_density));
    r.fp_density.push_back(std::move(fp_density));
  }
  return r;
}

FpAccuracy fp_vs_analytic(const KineticParams& params, const ValidateConfig& v) {
  FpAccuracy r;
  const auto c = fp_coefficients(params);
  FpOptions opt;
  opt.initial_center = params.x0 + c.drift * v.fp_warmup;
  opt.initial_variance = 2.0 * c.diffusion * v.fp_warmup;
  const auto sol = solve_fp_pde(params, v.fp_grid, v.fp_times, opt);
  for (const auto& field : sol.fields) {
    const double t = field.t + v.fp_warmup;
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < field.x.size(); ++j) {
      const double ref = analytic_density(field.x[j], t, params);
      num += (field.p[j] - ref) * (field.p[j] - ref);
      den += ref * ref;
    }
    const double mean = params.x0 + c.drift * t, var = 2.0 * c.diffusion * t;
    const auto m = density_moments(field);
    const auto [qm, qv] = analytic_moments(params, t);
    r.times.push_back(field.t);
    r.l2.push_back(std::sqrt(num / den));
    // Mean errors are measured against the displacement E t, not x0 + E t.
    r.pde_mean_rel.push_back(std::fabs(m.mean - mean) / std::fabs(c.drift * t));
    r.pde_var_rel.push_back(std::fabs(m.variance - var) / var);
    r.analytic_mean_rel.push_back(std::fabs(qm - mean) / std::fabs(c.drift * t));
    r.analytic_var_rel.push_back(std::fabs(qv - var) / var);
  }
  return r;
}

std::vector<DriftScenario> drift_scenarios(const KineticParams& base, const ValidateConfig& v,
                                           std::uint64_t seed, unsigned threads) {
  struct Case {
    const char* name;
    double factor;
    int sign;
  };
  const Case cases[] = {{"growth", 2.0, 1}, {"balance", 1.0, 0}, {"decay", 0.5, -1}};
  std::vector<DriftScenario> out;
  for (std::size_t i = 0; i < std::size(cases); ++i) {
    KineticParams p = with_count(base, v.drift_n0);
    p.k_minus = v.drift_k_minus;
    p.k_plus = cases[i].factor * v.drift_k_minus / v.drift_n0;
    p.propensity = PropensityModel::Linear;
    p = with_max_length(p, v.drift_max_length);

    DriftScenario s;
    s.name = cases[i].name;
    s.k_plus = p.k_plus;
    s.k_minus = p.k_minus;
    s.n0 = p.n0;
    s.expected_sign = cases[i].sign;

    EnsembleOptions opt;
    opt.sample_times = {0.0, v.drift_t_end};
    opt.initial_length = v.drift_initial_length;
    opt.threads = threads;
    const auto ens = run_ensemble(p, v.drift_trajectories, v.drift_t_end, mix64(seed + i + 1), opt);
    s.ssa_shift = ens.length_mean[1] - ens.length_mean[0];
    s.ssa_se = std::sqrt(ens.length_var[1] / static_cast<double>(ens.trajectories));
    s.ssa_sign = sign_of(s.ssa_shift, 3.0 * s.ssa_se);

    const auto c = fp_coefficients(p);
    s.fp_drift = c.drift;
    FpOptions fo;
    fo.initial_center = p.x0 + static_cast<double>(v.drift_initial_length - p.min_length()) * p.delta;
    const double times[] = {0.0, v.drift_t_end};
    const auto sol = solve_fp_pde(p, v.fp_grid, times, fo);
    s.fp_shift = density_moments(sol.fields[1]).mean - density_moments(sol.fields[0]).mean;
    const double spread = std::sqrt(2.0 * c.diffusion * v.drift_t_end);
    s.fp_threshold = 1e-6 * spread;
    s.fp_sign = sign_of(s.fp_shift, s.fp_threshold);
    s.pass = s.ssa_sign == s.expected_sign && s.fp_sign == s.expected_sign &&
             sign_of(c.drift, 0.0) == s.expected_sign;
    out.push_back(s);
  }
  return out;
}

HalfChannelReport half_channel(const KineticParams& p) {
  HalfChannelReport r;
  r.distance = 0.5 * p.x_l - p.x0;
  r.drift = fp_coefficients(p).drift;
  r.crossing_time = r.drift > 0.0 ? r.distance / r.drift : INFINITY;
  r.required_drift = r.distance / r.target_time;
  r.required_rate = r.required_drift / p.delta;
  r.required_n0 = (r.required_rate + p.k_minus) / p.k_plus;
  r.implied_count_scale = p.n0 / r.required_n0;
  return r;
}

std::string half_channel_text(const HalfChannelReport& r, const KineticParams& p) {
  std::string o;
  o += "Half-channel crossing\n";
  o += "=====================\n\n";
  o += fmt::format("Distance from x0 to x_l/2: {:.6g} m\n", r.distance);
  o += fmt::format("Configured parameters give E = {:.6g} m/s, so the mean tip position\n"
                   "x(t) = x0 + E t reaches x_l/2 after {:.6g} s, not {:.6g} s.\n\n",
                   r.drift, r.crossing_time, r.target_time);
  o += fmt::format("Inversion for a {:.6g} s crossing:\n", r.target_time);
  o += fmt::format("  E = {:.6g} m / {:.6g} s = {:.6g} m/s\n", r.distance, r.target_time, r.required_drift);
  o += fmt::format("  k+ N0 - k- = E / delta = {:.6g} 1/s\n", r.required_rate);
  o += fmt::format("  N0 = (E / delta + k-) / k+ = {:.6g} uM with k+ = {:.6g}, k- = {:.6g}\n\n",
                   r.required_n0, p.k_plus, p.k_minus);
  o += "Unit readings of n0:\n";
  o += fmt::format("  concentration (n0 = {:.6g} uM): crossing after {:.6g} s\n", p.n0, r.crossing_time);
  o += fmt::format("  count (n0 = {:.6g} molecules): a 50 s crossing needs {:.6g} molecules per uM\n"
                   "    (interpretation: count, count_scale: {:.6g})\n",
                   p.n0, r.implied_count_scale, r.implied_count_scale);
  return o;
}

ValidationReport run_validation(const ScenarioConfig& config) {
  const auto& v = config.validate;
  const auto& k = config.kinetics;
  const std::uint64_t seed = config.ssa.seed.value_or(0);
  ValidationReport rep;
  rep.steady = steady_state_check(k, config.ode);
  rep.equivalence = ssa_vs_master(k, v, seed, config.ssa.threads);
  rep.overlay = master_vs_fp(k, v);
  rep.fp = fp_vs_analytic(k, v);
  rep.drift = drift_scenarios(k, v, seed, config.ssa.threads);
  rep.half = half_channel(k);

  auto add = [&rep](std::string check, std::string layers, double t, std::string metric, double value,
                    double tol, bool pass) {
    rep.rows.push_back({std::move(check), std::move(layers), t, std::move(metric), value, tol, pass});
  };
  add("steady_state", "ode|critical", config.ode.t_end, "relative_error", rep.steady.rk4_rel_error, 1e-3,
      rep.steady.rk4_rel_error <= 1e-3);
  add("steady_state", "ode|relaxation", config.ode.t_end, "relative_error", rep.steady.analytic_rel_error,
      1e-3, rep.steady.analytic_rel_error <= 1e-3);
  const auto& eq = rep.equivalence;
  add("oracle_equivalence", "ssa|master", eq.times.back(), "max_mean_relative_error",
      eq.max_mean_rel_error, 0.05, eq.max_mean_rel_error <= 0.05);
  for (std::size_t i = 0; i < eq.tv.size(); ++i)
    add("oracle_equivalence", "ssa|master", eq.tv_times[i], "total_variation", eq.tv[i], 0.02, eq.tv[i] <= 0.02);
  const auto& ov = rep.overlay;
  for (std::size_t i = 0; i < ov.times.size(); ++i) {
    add("position_distribution", "master|fp_analytic", ov.times[i], "total_variation", ov.tv[i], 0.1,
        ov.tv[i] <= 0.1);
    const double cells = static_cast<double>(std::llabs(ov.master_mode[i] - ov.fp_mode[i]));
    add("position_distribution", "master|fp_analytic", ov.times[i], "mode_offset_cells", cells, 1.0,
        cells <= 1.0);
  }
  for (std::size_t i = 0; i < rep.fp.times.size(); ++i) {
    const double t = rep.fp.times[i];
    add("fp_accuracy", "fp_pde|fp_analytic", t, "relative_l2", rep.fp.l2[i], 1e-3, rep.fp.l2[i] <= 1e-3);
    add("fp_accuracy", "fp_analytic|moment_law", t + v.fp_warmup, "mean_relative_error",
        rep.fp.analytic_mean_rel[i], 1e-6, rep.fp.analytic_mean_rel[i] <= 1e-6);
    add("fp_accuracy", "fp_analytic|moment_law", t + v.fp_warmup, "variance_relative_error",
        rep.fp.analytic_var_rel[i], 1e-6, rep.fp.analytic_var_rel[i] <= 1e-6);
    add("fp_accuracy", "fp_pde|moment_law", t + v.fp_warmup, "mean_relative_error", rep.fp.pde_mean_rel[i],
        1e-6, rep.fp.pde_mean_rel[i] <= 1e-6);
    add("fp_accuracy", "fp_pde|moment_law", t + v.fp_warmup, "variance_relative_error",
        rep.fp.pde_var_rel[i], 1e-6, rep.fp.pde_var_rel[i] <= 1e-6);
  }
  for (const auto& d : rep.drift) {
    add("drift_sign_" + d.name, "ssa", v.drift_t_end, "mean_length_shift", d.ssa_shift, 3.0 * d.ssa_se,
        d.ssa_sign == d.expected_sign);
    add("drift_sign_" + d.name, "fp_pde", v.drift_t_end, "mean_position_shift_m", d.fp_shift, d.fp_threshold,
        d.fp_sign == d.expected_sign);
  }
  rep.all_pass = std::all_of(rep.rows.begin(), rep.rows.end(), [](const CheckRow& r) { return r.pass; });
  return rep;
}

}  // namespace nanowire::cli
