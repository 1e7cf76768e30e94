// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nanowire/cli/config.hpp"
#include "nanowire/params.hpp"

namespace nanowire::cli {

/// One line of the cross-layer comparison table.
struct CheckRow {
  std::string check;
  std::string layers;
  double t = 0.0;
  std::string metric;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SteadyStateCheck {
  double k = 0.0;          ///< critical concentration
  double rk4_final = 0.0;
  double analytic_final = 0.0;
  double rk4_rel_error = 0.0;
  double analytic_rel_error = 0.0;  ///< relaxation form vs RK4 at t_end
  bool exact_at_zero = false;       ///< both forms start at n0 bit for bit
};
SteadyStateCheck steady_state_check(const KineticParams& params, const OdeConfig& ode);

/// SSA ensemble against the master equation on a small chain.
struct OracleEquivalence {
  KineticParams params;
  std::vector<double> times;
  std::vector<double> ssa_mean, master_mean;
  double max_mean_rel_error = 0.0;
  std::vector<double> tv_times, tv;
};
OracleEquivalence ssa_vs_master(const KineticParams& base, const ValidateConfig& v,
                                std::uint64_t seed, unsigned threads = 0);

/// Master equation (linear propensity) mapped to x = x0 + (i - min_length) delta
/// against the analytic drift-diffusion density on the same lattice.
struct MasterFpOverlay {
  KineticParams params;
  std::vector<double> times, tv;
  std::vector<std::int64_t> master_mode, fp_mode;  ///< lengths at the maxima
  std::vector<std::vector<double>> x, master_density, fp_density;  ///< per time, 1/m
};
MasterFpOverlay master_vs_fp(const KineticParams& base, const ValidateConfig& v);

/// Numerical PDE against the drifting Gaussian, warm-started at fp_warmup.
struct FpAccuracy {
  std::vector<double> times;  ///< PDE time; the Gaussian is evaluated at t + warmup
  std::vector<double> l2, pde_mean_rel, pde_var_rel;
  std::vector<double> analytic_mean_rel, analytic_var_rel;  ///< quadrature of the closed form
};
FpAccuracy fp_vs_analytic(const KineticParams& params, const ValidateConfig& v);

struct DriftScenario {
  std::string name;
  double k_plus = 0.0;
  double k_minus = 0.0;
  double n0 = 0.0;
  int expected_sign = 0;
  double ssa_shift = 0.0;  ///< mean length change over the run
  double ssa_se = 0.0;
  int ssa_sign = 0;        ///< 0 when |shift| < 3 SE
  double fp_drift = 0.0;   ///< E
  double fp_shift = 0.0;   ///< PDE mean displacement, m
  double fp_threshold = 0.0;  ///< |shift| below this counts as zero
  int fp_sign = 0;
  bool pass = false;
};
std::vector<DriftScenario> drift_scenarios(const KineticParams& base, const ValidateConfig& v,
                                           std::uint64_t seed, unsigned threads = 0);

/// Which parameters would make the tip reach x_l / 2 in 50 s.
struct HalfChannelReport {
  double distance = 0.0;          ///< x_l / 2 - x0, m
  double target_time = 50.0;
  double drift = 0.0;             ///< E under the configured parameters
  double crossing_time = 0.0;     ///< distance / E under the configured parameters
  double required_drift = 0.0;    ///< distance / target_time
  double required_rate = 0.0;     ///< required_drift / delta = k+ N0 - k-
  double required_n0 = 0.0;       ///< uM
  double implied_count_scale = 0.0;  ///< counts per uM if n0 is read as a count
};
HalfChannelReport half_channel(const KineticParams& params);
std::string half_channel_text(const HalfChannelReport& report, const KineticParams& params);

struct ValidationReport {
  SteadyStateCheck steady;
  OracleEquivalence equivalence;
  MasterFpOverlay overlay;
  FpAccuracy fp;
  std::vector<DriftScenario> drift;
  HalfChannelReport half;
  std::vector<CheckRow> rows;
  bool all_pass = false;
};
ValidationReport run_validation(const ScenarioConfig& config);

}  // namespace nanowire::cli
