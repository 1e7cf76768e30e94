// SPDX-License-Identifier: Apache-2.0
#include "nanowire/kinetics.hpp"

#include <cmath>

#include "nanowire/error.hpp"
#include "nanowire/rk4.hpp"

namespace nanowire {

Rates ode_rhs(const DeterministicState& state, const KineticParams& params) {
  const double dn = -2.0 * params.k_plus * state.n * state.n + params.k_minus;
  return {dn, -dn};
}

double critical_concentration(const KineticParams& params) {
  if (params.k_plus == 0.0) throw ValidationError("critical concentration undefined for k_plus = 0");
  return std::sqrt(params.k_minus / (2.0 * params.k_plus));
}

double analytic_concentration(double t, const KineticParams& params) {
  if (t < 0.0) throw ValidationError("t must be >= 0");
  const double k = critical_concentration(params);
  return (params.initial_concentration() - k) * std::exp(-2.0 * params.k_plus * t) + k;
}

double exact_concentration(double t, const KineticParams& params) {
  if (t < 0.0) throw ValidationError("t must be >= 0");
  const double n0 = params.initial_concentration();
  const double k = critical_concentration(params);
  if (k == 0.0) return n0 / (1.0 + 2.0 * params.k_plus * n0 * t);
  const double ratio = n0 / k;
  if (ratio == 1.0) return k;
  const double rate = 2.0 * params.k_plus * k;
  if (ratio > 1.0) {
    // coth(u) = 1 + 2 / expm1(2u); acoth(r) = atanh(1/r)
    const double u = rate * t + std::atanh(1.0 / ratio);
    return k * (1.0 + 2.0 / std::expm1(2.0 * u));
  }
  return k * std::tanh(rate * t + std::atanh(ratio));
}

std::vector<DeterministicState> integrate_ode(const KineticParams& params, double t_end,
                                              const OdeOptions& options) {
  auto rhs = [&params](const DeterministicState& s) { return ode_rhs(s, params); };
  detail::Rk4Integrator<decltype(rhs)> rk4(rhs, options.max_halvings);
  return rk4.run({0.0, params.initial_concentration(), 0.0}, t_end, options.dt);
}

}  // namespace nanowire
