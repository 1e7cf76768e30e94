// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "nanowire/params.hpp"
#include "nanowire/rng.hpp"

namespace nanowire {

/// Free-monomer count and filament length. n_free + length is conserved.
struct SystemState {
  std::int64_t n_free = 0;
  std::int64_t length = 4;
  double t = 0.0;

  friend bool operator==(const SystemState&, const SystemState&) = default;
};

enum class Event { Polymerization, Depolymerization, Quiescent, ReceiverReached };

struct StepResult {
  SystemState state;
  Event event;
};

/// Eq.-5 style pair count k+ n (n - 1) / 2 (zero below two monomers), or
/// k+ n under PropensityModel::Linear.
double propensity_polymerization(std::int64_t n_free, const KineticParams& params);

/// k- while the filament is longer than the nucleation floor, else 0.
double propensity_depolymerization(const SystemState& state, const KineticParams& params);

/// Initial state: n_free = total_count(), length = min_length().
SystemState initial_state(const KineticParams& params);

/// One Gillespie direct-method event. Terminal markers (Quiescent,
/// ReceiverReached) return the input state unchanged.
StepResult ssa_step(const SystemState& state, const KineticParams& params, CounterRng& rng);

enum class Termination { TimeLimit, Quiescent, ReceiverReached };

struct Trajectory {
  std::uint64_t rng_seed = 0;
  std::vector<SystemState> events;  ///< initial state followed by each event
  std::int64_t polymerizations = 0;
  std::int64_t depolymerizations = 0;
  Termination termination = Termination::TimeLimit;
};

/// Runs until t_end, receiver contact, or quiescence.
Trajectory simulate_trajectory(const KineticParams& params, const SystemState& start,
                               double t_end, std::uint64_t seed);

struct EnsembleOptions {
  /// Sample times; empty means `samples` evenly spaced points on [0, t_end].
  std::vector<double> sample_times;
  int samples = 101;
  /// Starting length; 0 selects min_length().
  std::int64_t initial_length = 0;
  /// Worker threads; 0 picks hardware concurrency.
  unsigned threads = 0;
  /// Record per-time length histograms over [min_length, max_length].
  bool histograms = false;
};

struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> n_free_mean;
  std::vector<double> n_free_var;
  std::vector<double> length_mean;
  std::vector<double> length_var;
  std::size_t trajectories = 0;
  std::uint64_t seed = 0;
  std::int64_t polymerizations = 0;
  std::int64_t depolymerizations = 0;
  std::int64_t receiver_reached = 0;  ///< trajectories absorbed at max_length
  std::int64_t first_length = 0;      ///< length of histogram bin 0
  std::vector<std::vector<std::int64_t>> length_histogram;  ///< [time][length - first_length]

  /// Empirical length distribution at sample `k` (requires histograms).
  std::vector<double> length_distribution(std::size_t k) const;
};

/// Independent trajectories with sub-seeds CounterRng::stream_key(seed, i).
/// Moments are merged from exact integer sums, so the result does not depend
/// on thread count or scheduling.
EnsembleStats run_ensemble(const KineticParams& params, std::size_t n_traj, double t_end,
                           std::uint64_t seed, const EnsembleOptions& options = {});

}  // namespace nanowire
