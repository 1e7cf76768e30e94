// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace oracle {

/// n(t) for dn/dt = -2 kp n^2 + km, long double, straight from the coth/tanh
/// closed forms (no shared code with the library).
inline long double riccati(long double t, long double kp, long double km, long double n0) {
  const long double k = std::sqrt(km / (2.0L * kp));
  if (k == 0.0L) return n0 / (1.0L + 2.0L * kp * n0 * t);
  const long double r = 2.0L * kp * k * t;
  if (n0 > k) return k / std::tanh(r + std::atanh(k / n0));
  if (n0 < k) return k * std::tanh(r + std::atanh(n0 / k));
  return k;
}

}  // namespace oracle
