// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

namespace nanowire {

/// Rate law used for the polymerization propensity of the discrete layers.
///
/// Pairwise counts monomer pairs, k+ N (N - 1) / 2. Linear is the pseudo
/// first-order rate k+ N whose Kramers-Moyal expansion gives exactly the
/// drift and diffusion coefficients of the Fokker-Planck layer.
enum class PropensityModel { Pairwise, Linear };

/// Which reading of `n0` is primary. Concentration: n0 is in uM and the
/// stochastic count is n0 * count_scale. Count: n0 is a molecule count and
/// the concentration is n0 / count_scale.
enum class CountInterpretation { Concentration, Count };

std::string_view to_string(PropensityModel model);
std::string_view to_string(CountInterpretation interpretation);

/// Physical constants of the pointed-end elongation reaction and the
/// transmitter/receiver geometry. Defaults reproduce the baseline scenario.
struct KineticParams {
  double k_plus = 0.979;   ///< polymerization rate, 1/(uM s)
  double k_minus = 0.166;  ///< depolymerization rate, 1/s
  double delta = 11e-9;    ///< monomer-to-monomer step, m
  double n0 = 1000.0;      ///< initial free monomers (see interpretation)
  double x0 = 1e-6;        ///< transmitter surface, m
  double x_l = 10e-6;      ///< receiver surface, m
  int nucleus_size = 3;    ///< monomers in the anchored nucleation core

  double count_scale = 1.0;  ///< molecule counts per uM
  CountInterpretation interpretation = CountInterpretation::Concentration;
  PropensityModel propensity = PropensityModel::Pairwise;

  /// Initial free-monomer concentration in uM.
  double initial_concentration() const;
  /// Initial free-monomer count for the stochastic layers.
  std::int64_t total_count() const;

  /// Shortest filament: the nucleation core plus the first bound monomer.
  std::int64_t min_length() const { return nucleus_size + 1; }
  /// Length at which the tip touches the receiver.
  std::int64_t max_length() const;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
};

/// Copy of `params` with x_l moved so that max_length() == length.
KineticParams with_max_length(KineticParams params, std::int64_t length);

}  // namespace nanowire
