// SPDX-License-Identifier: Apache-2.0
#include "nanowire/stability.hpp"

#include <cmath>

#include "nanowire/error.hpp"
#include "nanowire/rk4.hpp"
#include "nanowire/simd/kernels.hpp"

namespace nanowire {

double nullcline(double a, const KineticParams& params) {
  if (a < 0.0) throw ValidationError("nullcline requires a >= 0");
  return critical_concentration(params) * std::sqrt(a);
}

double nullcline_distance(PhasePoint point, const KineticParams& params) {
  return std::fabs(point.n - nullcline(std::max(point.a, 0.0), params));
}

Rates balance_rhs(PhasePoint point, const KineticParams& params) {
  const double dn = -2.0 * params.k_plus * point.n * point.n + params.k_minus * point.a;
  return {dn, -dn};
}

Matrix2 jacobian(double n, const KineticParams& params) {
  const double g = 4.0 * params.k_plus * n;
  return {{{-g, 0.0}, {g, 0.0}}};
}

std::string_view to_string(StabilityClass cls) {
  switch (cls) {
    case StabilityClass::AsymptoticallyStable:
      return "asymptotically stable";
    case StabilityClass::MarginallyStable:
      return "stable, not asymptotically";
    case StabilityClass::Unstable:
      return "unstable";
    case StabilityClass::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

Eigenvalues eigenvalues(const Matrix2& m) {
  const double half_trace = 0.5 * (m[0][0] + m[1][1]);
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = half_trace * half_trace - det;
  Eigenvalues ev;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    ev.lambda1 = half_trace + s;
    ev.lambda2 = half_trace - s;
  } else {
    const double s = std::sqrt(-disc);
    ev.lambda1 = {half_trace, s};
    ev.lambda2 = {half_trace, -s};
  }
  const double r1 = ev.lambda1.real();
  const double r2 = ev.lambda2.real();
  if (r1 > 0.0 || r2 > 0.0) {
    ev.classification = StabilityClass::Unstable;
  } else if (r1 < 0.0 && r2 < 0.0) {
    ev.classification = StabilityClass::AsymptoticallyStable;
  } else if (r2 < 0.0 || r1 < 0.0) {
    ev.classification = StabilityClass::MarginallyStable;
  } else {
    ev.classification = StabilityClass::Degenerate;
  }
  return ev;
}

double stability_index(const StabilityInputs& in) {
  if (in.length == 0.0) throw ValidationError("stability index undefined for zero length");
  if (!(in.m_field > 0.0 && in.enzyme > 0.0 && in.length > 0.0))
    throw ValidationError("stability inputs must be > 0");
  return in.m_field * in.enzyme / in.length;
}

std::string_view to_string(FieldForm form) {
  return form == FieldForm::RateLaw ? "rate_law" : "balance";
}

PhaseGrid default_phase_grid(const KineticParams& params) {
  const double n0 = params.initial_concentration();
  return {0.0, n0, 0.0, n0, 20, 20};
}

std::vector<PhasePoint> default_phase_starts(const KineticParams& params) {
  const double n0 = params.initial_concentration();
  std::vector<PhasePoint> starts;
  for (int i = 1; i <= 5; ++i) starts.push_back({0.2 * i * n0, 0.0});
  return starts;
}

PhasePortrait phase_field(const PhaseGrid& grid, const KineticParams& params,
                          const PhaseOptions& options) {
  params.validate();
  if (grid.n_min < 0.0 || grid.a_min < 0.0 || grid.n_max < grid.n_min || grid.a_max < grid.a_min)
    throw ValidationError("phase grid must be a nonnegative box");
  if (grid.n_steps < 1 || grid.a_steps < 1) throw ValidationError("phase grid needs >= 1 step per axis");

  PhasePortrait portrait;
  portrait.form = options.form;

  const auto nn = static_cast<std::size_t>(grid.n_steps) + 1;
  const auto na = static_cast<std::size_t>(grid.a_steps) + 1;
  std::vector<double> n(nn * na), a(nn * na), dn(nn * na), da(nn * na);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      n[i * na + j] = grid.n_min + (grid.n_max - grid.n_min) * static_cast<double>(i) / grid.n_steps;
      a[i * na + j] = grid.a_min + (grid.a_max - grid.a_min) * static_cast<double>(j) / grid.a_steps;
    }
  }
  const bool rate_law = options.form == FieldForm::RateLaw;
  simd::phase_rates(n, a, params.k_plus, rate_law ? params.k_minus : 0.0,
                    rate_law ? 0.0 : params.k_minus, dn, da);
  portrait.field.reserve(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) portrait.field.push_back({{n[i], a[i]}, dn[i], da[i]});

  const int points = std::max(options.nullcline_points, 2);
  for (int i = 0; i < points; ++i) {
    const double av = grid.a_min + (grid.a_max - grid.a_min) * i / (points - 1);
    portrait.nullcline_curve.push_back({nullcline(av, params), av});
  }

  const std::vector<PhasePoint> starts =
      options.starts.empty() ? default_phase_starts(params) : options.starts;
  for (const PhasePoint& start : starts) {
    if (start.n < 0.0 || start.a < 0.0) throw ValidationError("phase start must be nonnegative");
    PhaseTrajectory traj;
    traj.start = start;
    const DeterministicState s0{0.0, start.n, start.a};
    if (rate_law) {
      auto rhs = [&params](const DeterministicState& s) { return ode_rhs(s, params); };
      traj.states = detail::Rk4Integrator<decltype(rhs)>(rhs, options.max_halvings)
                        .run(s0, options.t_end, options.dt);
    } else {
      auto rhs = [&params](const DeterministicState& s) { return balance_rhs({s.n, s.a}, params); };
      traj.states = detail::Rk4Integrator<decltype(rhs)>(rhs, options.max_halvings)
                        .run(s0, options.t_end, options.dt);
    }
    const DeterministicState& last = traj.states.back();
    traj.final_distance = nullcline_distance({last.n, last.a}, params);
    portrait.trajectories.push_back(std::move(traj));
  }
  return portrait;
}

}  // namespace nanowire
