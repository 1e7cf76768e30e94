// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "nanowire/kinetics.hpp"
#include "nanowire/params.hpp"

namespace nanowire {

struct PhasePoint {
  double n = 0.0;  ///< free monomers, uM
  double a = 0.0;  ///< polymerized monomers, uM
};

/// Inputs of the scalar stability heuristic (arbitrary units).
struct StabilityInputs {
  double m_field = 0.0;  ///< magnetic-field intensity, mT
  double enzyme = 0.0;   ///< enzyme concentration, uM
  double length = 0.0;   ///< nanowire length, m
};

/// n = K sqrt(a): the zero set of -2 k+ n^2 + k- a.
double nullcline(double a, const KineticParams& params);

/// Vertical residual |n - K sqrt(a)|; bounds the Euclidean distance to the curve.
double nullcline_distance(PhasePoint point, const KineticParams& params);

/// Nullcline balance form: dn/dt = -2 k+ n^2 + k- a, da/dt = -dn/dt.
Rates balance_rhs(PhasePoint point, const KineticParams& params);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// [[-4 k+ n, 0], [4 k+ n, 0]]
Matrix2 jacobian(double n, const KineticParams& params);

enum class StabilityClass { AsymptoticallyStable, MarginallyStable, Unstable, Degenerate };

std::string_view to_string(StabilityClass cls);

struct Eigenvalues {
  std::complex<double> lambda1;  ///< larger real part
  std::complex<double> lambda2;
  StabilityClass classification = StabilityClass::Degenerate;
};

/// Closed-form roots of lambda^2 - tr lambda + det = 0. For the Jacobian
/// above this yields lambda1 = 0 and lambda2 = -4 k+ n exactly.
Eigenvalues eigenvalues(const Matrix2& jac);

/// m_field * enzyme / length.
double stability_index(const StabilityInputs& inputs);

enum class FieldForm {
  RateLaw,  ///< kinetics ode_rhs (constant k- source)
  Balance,  ///< balance_rhs, whose fixed points are the nullcline
};

std::string_view to_string(FieldForm form);

struct PhaseGrid {
  double n_min = 0.0, n_max = 0.0;
  double a_min = 0.0, a_max = 0.0;
  int n_steps = 20;
  int a_steps = 20;
};

struct PhaseArrow {
  PhasePoint at;
  double dn_dt = 0.0;
  double da_dt = 0.0;
};

struct PhaseTrajectory {
  PhasePoint start;
  std::vector<DeterministicState> states;
  double final_distance = 0.0;  ///< nullcline_distance at the last state
};

struct PhaseOptions {
  FieldForm form = FieldForm::Balance;
  /// Empty selects five starts (f n0, 0), f = 0.2, 0.4, ..., 1.0.
  std::vector<PhasePoint> starts;
  double t_end = 10.0;
  double dt = 1e-3;
  int max_halvings = 16;
  int nullcline_points = 200;
};

struct PhasePortrait {
  std::vector<PhaseArrow> field;
  std::vector<PhaseTrajectory> trajectories;
  std::vector<PhasePoint> nullcline_curve;
  FieldForm form = FieldForm::Balance;
};

/// Default grid covering [0, n0] x [0, n0].
PhaseGrid default_phase_grid(const KineticParams& params);

std::vector<PhasePoint> default_phase_starts(const KineticParams& params);

PhasePortrait phase_field(const PhaseGrid& grid, const KineticParams& params,
                          const PhaseOptions& options = {});

}  // namespace nanowire
