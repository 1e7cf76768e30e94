// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nanowire/params.hpp"

namespace nanowire {

/// Distribution over filament lengths first_length, first_length + 1, ...
struct ProbabilityVector {
  std::int64_t first_length = 4;
  std::vector<double> p;
  double t = 0.0;

  std::int64_t last_length() const {
    return first_length + static_cast<std::int64_t>(p.size()) - 1;
  }
};

/// Point mass at `length` on the state space of `params`.
ProbabilityVector point_mass(const KineticParams& params, std::int64_t length);

/// Tridiagonal generator W of dp/dt = W p over lengths [min_length, max_length].
///
/// Column s holds the exits of state s: an up-jump at rate up(s), a
/// down-jump at rate down(s), and -(up + down) on the diagonal, so every
/// column sums to zero. The floor state has no down-jump (reflecting) and
/// the receiver state has no exits (absorbing).
struct TransitionMatrix {
  std::int64_t first_length = 4;
  std::vector<double> lower;  ///< row s coefficient on p[s-1] = up(s-1)
  std::vector<double> diag;
  std::vector<double> upper;  ///< row s coefficient on p[s+1] = down(s+1)

  std::size_t size() const { return diag.size(); }
  double up_rate(std::size_t s) const { return s + 1 < size() ? lower[s + 1] : 0.0; }
  double down_rate(std::size_t s) const { return s > 0 ? upper[s - 1] : 0.0; }
  /// y = W x
  void apply(std::span<const double> x, std::span<double> y) const;
};

struct GeneratorOptions {
  std::size_t state_cap = 100000;
  /// Length at which n_free equals total_count(); 0 selects min_length().
  std::int64_t initial_length = 0;
};

/// Up-rate from length i is the polymerization propensity at
/// n_free(i) = total_count() - (i - initial_length); down-rate is k-.
TransitionMatrix build_generator(const KineticParams& params, const GeneratorOptions& options = {});

struct MasterOptions {
  double rtol = 1e-7;
  double atol = 1e-11;
  double initial_step = 0.0;  ///< 0 picks 1e-3 / max exit rate
  std::size_t max_steps = 50'000'000;
};

/// TR-BDF2 with step-doubling error control. Returns one vector per sample
/// time (sorted, >= p0.t). Each output is clipped at zero and renormalized;
/// a normalization drift above 1e-6 before that is a SolverError.
std::vector<ProbabilityVector> integrate_master(const ProbabilityVector& p0,
                                                const TransitionMatrix& gen,
                                                std::span<const double> sample_times,
                                                const MasterOptions& options = {});

ProbabilityVector integrate_master(const ProbabilityVector& p0, const TransitionMatrix& gen,
                                   double t_end, const MasterOptions& options = {});

struct LengthMoments {
  double mean = 0.0;
  double variance = 0.0;
};

LengthMoments mean_and_variance(const ProbabilityVector& p);

/// Half the L1 distance between two distributions on the same support.
double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace nanowire
