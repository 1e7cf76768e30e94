// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nanowire/error.hpp"
#include "nanowire/kinetics.hpp"

namespace nanowire::detail {

/// Classical RK4 on the (n, a) pair with the negativity rejection rule:
/// a step producing a negative free-monomer stage value is retried as two
/// half steps. `a` is not checked: below K the rate law releases monomers
/// without a polymer reservoir and `a` legitimately goes negative.
template <class Rhs>
class Rk4Integrator {
 public:
  Rk4Integrator(Rhs rhs, int max_halvings) : rhs_(rhs), max_halvings_(max_halvings) {}

  DeterministicState step(const DeterministicState& s, double dt) const {
    return step_impl(s, dt, 0);
  }

  std::vector<DeterministicState> run(DeterministicState s, double t_end, double dt) const {
    if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
    if (!(t_end >= 0.0)) throw ValidationError("t_end must be >= 0");
    std::vector<DeterministicState> out;
    const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(s);
    const double t0 = s.t;
    for (long long k = 1; k <= steps; ++k) {
      const double t_next = k == steps ? t0 + t_end : t0 + static_cast<double>(k) * dt;
      s = step_impl(s, t_next - s.t, 0);
      s.t = t_next;
      out.push_back(s);
    }
    return out;
  }

 private:
  DeterministicState step_impl(const DeterministicState& s, double dt, int depth) const {
    DeterministicState out;
    if (try_step(s, dt, out)) return out;
    if (depth >= max_halvings_) {
      throw SolverError("RK4 step rejected at t=" + std::to_string(s.t) + " (dt=" +
                        std::to_string(dt) + "): negative concentration, dt too large");
    }
    const DeterministicState mid = step_impl(s, 0.5 * dt, depth + 1);
    return step_impl(mid, 0.5 * dt, depth + 1);
  }

  bool try_step(const DeterministicState& s, double dt, DeterministicState& out) const {
    auto ok = [](const DeterministicState& p) {
      return std::isfinite(p.n) && std::isfinite(p.a) && p.n >= 0.0;
    };
    auto shifted = [&](const Rates& r, double h) {
      return DeterministicState{s.t + h, s.n + h * r.dn_dt, s.a + h * r.da_dt};
    };
    const Rates k1 = rhs_(s);
    const DeterministicState s2 = shifted(k1, 0.5 * dt);
    if (!ok(s2)) return false;
    const Rates k2 = rhs_(s2);
    const DeterministicState s3 = shifted(k2, 0.5 * dt);
    if (!ok(s3)) return false;
    const Rates k3 = rhs_(s3);
    const DeterministicState s4 = shifted(k3, dt);
    if (!ok(s4)) return false;
    const Rates k4 = rhs_(s4);
    out.t = s.t + dt;
    out.n = s.n + dt / 6.0 * (k1.dn_dt + 2.0 * k2.dn_dt + 2.0 * k3.dn_dt + k4.dn_dt);
    out.a = s.a + dt / 6.0 * (k1.da_dt + 2.0 * k2.da_dt + 2.0 * k3.da_dt + k4.da_dt);
    return ok(out);
  }

  Rhs rhs_;
  int max_halvings_;
};

}  // namespace nanowire::detail
