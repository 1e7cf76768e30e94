// SPDX-License-Identifier: Apache-2.0
#include "nanowire/params.hpp"

#include <cmath>
#include <string>

#include "nanowire/error.hpp"

namespace nanowire {

std::string_view to_string(PropensityModel model) {
  return model == PropensityModel::Pairwise ? "pairwise" : "linear";
}

std::string_view to_string(CountInterpretation interpretation) {
  return interpretation == CountInterpretation::Concentration ? "concentration" : "count";
}

double KineticParams::initial_concentration() const {
  return interpretation == CountInterpretation::Concentration ? n0 : n0 / count_scale;
}

std::int64_t KineticParams::total_count() const {
  const double count =
      interpretation == CountInterpretation::Concentration ? n0 * count_scale : n0;
  return std::llround(count);
}

std::int64_t KineticParams::max_length() const {
  // Relative slack absorbs representation error when x_l - x0 is an exact
  // multiple of delta in decimal.
  const double steps = (x_l - x0) / delta;
  return nucleus_size + static_cast<std::int64_t>(std::floor(steps * (1.0 + 1e-12)));
}

void KineticParams::validate() const {
  auto fail = [](const std::string& msg) { throw ValidationError(msg); };
  if (!(std::isfinite(k_plus) && k_plus > 0.0)) fail("k_plus must be > 0");
  if (!(std::isfinite(k_minus) && k_minus >= 0.0)) fail("k_minus must be >= 0");
  if (!(std::isfinite(delta) && delta > 0.0)) fail("delta must be > 0");
  if (!(std::isfinite(n0) && n0 > 0.0)) fail("n0 must be > 0");
  if (!(std::isfinite(x0) && std::isfinite(x_l) && x_l > x0)) fail("x_l must be > x0");
  if (nucleus_size < 1) fail("nucleus_size must be >= 1");
  if (!(std::isfinite(count_scale) && count_scale > 0.0)) fail("count_scale must be > 0");
  if (!std::isfinite((x_l - x0) / delta) || (x_l - x0) / delta > 1e9)
    fail("channel length spans too many monomer steps");
  if (max_length() < min_length()) fail("channel shorter than one monomer step");
  if (total_count() < 1) fail("n0 yields no free monomers in the stochastic layer");
}

KineticParams with_max_length(KineticParams params, std::int64_t length) {
  params.x_l = params.x0 + static_cast<double>(length - params.nucleus_size) * params.delta;
  return params;
}

}  // namespace nanowire
