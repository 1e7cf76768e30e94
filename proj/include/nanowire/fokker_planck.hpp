// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nanowire/params.hpp"

namespace nanowire {

/// Drift E (m/s) and diffusion D (m^2/s) of the filament tip.
struct FpCoefficients {
  double drift = 0.0;
  double diffusion = 0.0;
};

/// E = (k+ N0 - k-) delta, D = (k+ N0 + k-) delta^2 / 2 with N0 the
/// initial concentration (frozen coefficients).
FpCoefficients fp_coefficients(const KineticParams& params);

/// Same formulas with the free-monomer concentration set to `n`.
FpCoefficients fp_coefficients_at(double n, const KineticParams& params);

double gaussian_density(double x, double mean, double variance);

/// Drift-diffusion Green's function from x0:
/// exp(-(x - x0 - E t)^2 / (4 D t)) / sqrt(4 pi D t). Requires t > 0.
double analytic_density(double x, double t, const KineticParams& params);

/// Tip-position density on the node grid x0 = x[0] < ... < x[G-1] = x_l.
/// `absorbed` is the probability that has left through the receiver.
struct DensityField {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> p;
  double absorbed = 0.0;
};

struct DensityMoments {
  double mass = 0.0;  ///< trapezoidal integral of p
  double mean = 0.0;
  double variance = 0.0;
};

DensityMoments density_moments(const DensityField& field);

/// Grid position of the largest density value.
double peak_position(const DensityField& field);

enum class CoefficientMode {
  Frozen,   ///< N = N0 throughout
  Dynamic,  ///< N(t) from the exact solution of the rate law
};

struct FpOptions {
  double dt = 0.0;                        ///< 0 picks a stable, accurate default
  std::optional<double> initial_center;   ///< default x0
  double initial_variance = 0.0;          ///< 0 means (4 dx)^2
  CoefficientMode mode = CoefficientMode::Frozen;
  int spatial_order = 4;                  ///< interior flux order, 2 or 4
};

struct FpSolution {
  std::vector<DensityField> fields;
  double dx = 0.0;
  double dt = 0.0;
  double peclet = 0.0;          ///< |E| dx / D at t = 0
  double max_mass_drift = 0.0;  ///< worst per-step change of interior + absorbed mass
  double min_value = 0.0;       ///< most negative density value seen
  std::vector<std::string> warnings;
};

/// Crank-Nicolson finite-volume solution of dp/dt = -E dp/dx + D d2p/dx2 on
/// [x0, x_l]: zero flux at x0, p = 0 at x_l. Interior fluxes are fourth-order
/// (second-order next to the walls); the scheme conserves interior plus
/// absorbed mass to rounding.
FpSolution solve_fp_pde(const KineticParams& params, std::size_t grid_size,
                        std::span<const double> t_samples, const FpOptions& options = {});

}  // namespace nanowire
