// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "nanowire/params.hpp"

namespace nanowire {

/// Mean-field state: free-monomer concentration n and polymerized
/// concentration a, both in uM. n + a is conserved.
struct DeterministicState {
  double t = 0.0;
  double n = 0.0;
  double a = 0.0;
};

struct Rates {
  double dn_dt = 0.0;
  double da_dt = 0.0;
};

/// dn/dt = -2 k+ n^2 + k-, da/dt = -dn/dt.
Rates ode_rhs(const DeterministicState& state, const KineticParams& params);

/// sqrt(k- / (2 k+)), the nonnegative root of -2 k+ n^2 + k- = 0.
double critical_concentration(const KineticParams& params);

/// Exponential relaxation (n0 - K) exp(-2 k+ t) + K.
///
/// This is the closed form commonly quoted for the rate law. It is not the
/// exact solution of ode_rhs; see exact_concentration.
double analytic_concentration(double t, const KineticParams& params);

/// Exact solution of the Riccati equation dn/dt = -2 k+ (n^2 - K^2):
/// K coth(2 k+ K t + acoth(n0/K)) above K, the tanh branch below it.
double exact_concentration(double t, const KineticParams& params);

struct OdeOptions {
  double dt = 1e-3;
  /// A step whose stages go negative is split in two, recursively, at most
  /// this many times. Zero makes any rejection an error.
  int max_halvings = 16;
};

/// Fixed-step RK4 from (n0, 0). Emits t = 0, dt, 2 dt, ..., t_end.
std::vector<DeterministicState> integrate_ode(const KineticParams& params, double t_end,
                                              const OdeOptions& options = {});

}  // namespace nanowire
