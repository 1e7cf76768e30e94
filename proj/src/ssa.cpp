// SPDX-License-Identifier: Apache-2.0
#include "nanowire/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "nanowire/error.hpp"

namespace nanowire {
namespace {

__extension__ typedef __int128 Int128;

struct MomentSums {
  Int128 n_sum = 0;
  Int128 n_sq = 0;
  Int128 len_sum = 0;
  Int128 len_sq = 0;
};

struct Accumulator {
  std::vector<MomentSums> sums;
  std::vector<std::vector<std::int64_t>> histogram;
  std::int64_t polymerizations = 0;
  std::int64_t depolymerizations = 0;
  std::int64_t receiver_reached = 0;

  Accumulator(std::size_t times, std::size_t bins, bool histograms) : sums(times) {
    if (histograms) histogram.assign(times, std::vector<std::int64_t>(bins, 0));
  }

  void merge(const Accumulator& other) {
    for (std::size_t k = 0; k < sums.size(); ++k) {
      sums[k].n_sum += other.sums[k].n_sum;
      sums[k].n_sq += other.sums[k].n_sq;
      sums[k].len_sum += other.sums[k].len_sum;
      sums[k].len_sq += other.sums[k].len_sq;
    }
    for (std::size_t k = 0; k < histogram.size(); ++k)
      for (std::size_t b = 0; b < histogram[k].size(); ++b) histogram[k][b] += other.histogram[k][b];
    polymerizations += other.polymerizations;
    depolymerizations += other.depolymerizations;
    receiver_reached += other.receiver_reached;
  }
};

double population_variance(Int128 sum, Int128 sq, std::size_t count) {
  const auto n = static_cast<Int128>(count);
  const Int128 numerator = n * sq - sum * sum;
  return static_cast<double>(numerator) / (static_cast<double>(count) * static_cast<double>(count));
}

}  // namespace

double propensity_polymerization(std::int64_t n_free, const KineticParams& params) {
  if (params.propensity == PropensityModel::Linear) {
    return n_free < 1 ? 0.0 : params.k_plus * static_cast<double>(n_free);
  }
  if (n_free < 2) return 0.0;
  const auto n = static_cast<double>(n_free);
  return params.k_plus * n * (n - 1.0) / 2.0;
}

double propensity_depolymerization(const SystemState& state, const KineticParams& params) {
  return state.length > params.min_length() ? params.k_minus : 0.0;
}

SystemState initial_state(const KineticParams& params) {
  return {params.total_count(), params.min_length(), 0.0};
}

StepResult ssa_step(const SystemState& state, const KineticParams& params, CounterRng& rng) {
  if (state.length >= params.max_length()) return {state, Event::ReceiverReached};
  const double a_poly = propensity_polymerization(state.n_free, params);
  const double a_depoly = propensity_depolymerization(state, params);
  const double a_total = a_poly + a_depoly;
  if (a_total <= 0.0) return {state, Event::Quiescent};

  SystemState next = state;
  next.t = state.t - std::log(rng.uniform()) / a_total;
  if (rng.uniform() * a_total < a_poly) {
    next.n_free -= 1;
    next.length += 1;
    return {next, Event::Polymerization};
  }
  next.n_free += 1;
  next.length -= 1;
  return {next, Event::Depolymerization};
}

Trajectory simulate_trajectory(const KineticParams& params, const SystemState& start,
                               double t_end, std::uint64_t seed) {
  Trajectory traj;
  traj.rng_seed = seed;
  traj.events.push_back(start);
  CounterRng rng(seed);
  SystemState state = start;
  for (;;) {
    const StepResult r = ssa_step(state, params, rng);
    if (r.event == Event::Quiescent) {
      traj.termination = Termination::Quiescent;
      break;
    }
    if (r.event == Event::ReceiverReached) {
      traj.termination = Termination::ReceiverReached;
      break;
    }
    if (r.state.t > t_end) {
      traj.termination = Termination::TimeLimit;
      break;
    }
    state = r.state;
    traj.events.push_back(state);
    if (r.event == Event::Polymerization) ++traj.polymerizations;
    else ++traj.depolymerizations;
  }
  return traj;
}

std::vector<double> EnsembleStats::length_distribution(std::size_t k) const {
  if (k >= length_histogram.size()) throw ValidationError("no histogram recorded for sample");
  std::vector<double> p(length_histogram[k].size());
  for (std::size_t b = 0; b < p.size(); ++b)
    p[b] = static_cast<double>(length_histogram[k][b]) / static_cast<double>(trajectories);
  return p;
}

EnsembleStats run_ensemble(const KineticParams& params, std::size_t n_traj, double t_end,
                           std::uint64_t seed, const EnsembleOptions& options) {
  params.validate();
  if (n_traj < 1) throw ValidationError("ensemble needs at least one trajectory");
  if (!(t_end >= 0.0)) throw ValidationError("t_end must be >= 0");

  std::vector<double> times = options.sample_times;
  if (times.empty()) {
    const int samples = std::max(options.samples, 1);
    for (int k = 0; k < samples; ++k)
      times.push_back(samples == 1 ? t_end : t_end * k / (samples - 1));
  }
  if (!std::is_sorted(times.begin(), times.end())) throw ValidationError("sample times must be sorted");

  SystemState start = initial_state(params);
  if (options.initial_length != 0) {
    if (options.initial_length < params.min_length() || options.initial_length > params.max_length())
      throw ValidationError("initial_length outside [min_length, max_length]");
    start.length = options.initial_length;
  }
  const std::int64_t first = params.min_length();
  const auto bins = static_cast<std::size_t>(params.max_length() - first + 1);

  auto simulate_range = [&](std::size_t begin, std::size_t end, Accumulator& acc) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(CounterRng::stream_key(seed, i));
      SystemState state = start;
      std::size_t k = 0;
      auto record = [&](const SystemState& s) {
        auto& m = acc.sums[k];
        m.n_sum += s.n_free;
        m.n_sq += static_cast<Int128>(s.n_free) * s.n_free;
        m.len_sum += s.length;
        m.len_sq += static_cast<Int128>(s.length) * s.length;
        if (!acc.histogram.empty()) acc.histogram[k][static_cast<std::size_t>(s.length - first)] += 1;
      };
      for (;;) {
        const StepResult r = ssa_step(state, params, rng);
        const bool terminal = r.event == Event::Quiescent || r.event == Event::ReceiverReached;
        const double next_t =
            terminal || r.state.t > t_end ? std::numeric_limits<double>::infinity() : r.state.t;
        while (k < times.size() && times[k] < next_t) record(state), ++k;
        if (r.event == Event::ReceiverReached) acc.receiver_reached += 1;
        if (std::isinf(next_t)) break;
        state = r.state;
        if (r.event == Event::Polymerization) ++acc.polymerizations;
        else ++acc.depolymerizations;
      }
    }
  };

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(n_traj, 256)));
  std::vector<Accumulator> partial(workers, Accumulator(times.size(), bins, options.histograms));
  if (workers == 1) {
    simulate_range(0, n_traj, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_traj + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = std::min(n_traj, w * chunk);
      const std::size_t e = std::min(n_traj, b + chunk);
      pool.emplace_back(simulate_range, b, e, std::ref(partial[w]));
    }
    for (auto& t : pool) t.join();
  }
  Accumulator total = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) total.merge(partial[w]);

  EnsembleStats stats;
  stats.times = times;
  stats.trajectories = n_traj;
  stats.seed = seed;
  stats.polymerizations = total.polymerizations;
  stats.depolymerizations = total.depolymerizations;
  stats.receiver_reached = total.receiver_reached;
  stats.first_length = first;
  const auto count = static_cast<double>(n_traj);
  for (const auto& m : total.sums) {
    stats.n_free_mean.push_back(static_cast<double>(m.n_sum) / count);
    stats.n_free_var.push_back(population_variance(m.n_sum, m.n_sq, n_traj));
    stats.length_mean.push_back(static_cast<double>(m.len_sum) / count);
    stats.length_var.push_back(population_variance(m.len_sum, m.len_sq, n_traj));
  }
  stats.length_histogram = std::move(total.histogram);
  return stats;
}

}  // namespace nanowire
