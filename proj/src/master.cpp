// SPDX-License-Identifier: Apache-2.0
#include "nanowire/master.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nanowire/banded.hpp"
#include "nanowire/error.hpp"
#include "nanowire/simd/kernels.hpp"
#include "nanowire/ssa.hpp"

namespace nanowire {
namespace {

// TR-BDF2 constants.
const double kGamma = 2.0 - std::sqrt(2.0);
const double kBdfW = (1.0 - kGamma) / (2.0 - kGamma);
const double kBdfA = 1.0 / (kGamma * (2.0 - kGamma));
const double kBdfB = -(1.0 - kGamma) * (1.0 - kGamma) / (kGamma * (2.0 - kGamma));

class TrBdf2 {
 public:
  explicit TrBdf2(const TransitionMatrix& w)
      : w_(w), n_(w.size()), wy_(n_), rhs_(n_), stage_(n_), lo_(n_), di_(n_), up_(n_),
        scratch_(n_) {}

  // One step of size h from y into out.
  void step(std::span<const double> y, double h, std::span<double> out) {
    // Trapezoidal stage to t + gamma h.
    const double c1 = 0.5 * kGamma * h;
    w_.apply(y, wy_);
    simd::axpby(1.0, y, c1, wy_, rhs_);
    solve_shifted(c1, rhs_);
    std::copy(rhs_.begin(), rhs_.end(), stage_.begin());
    // BDF2 stage to t + h.
    simd::axpby(kBdfA, stage_, kBdfB, y, rhs_);
    solve_shifted(kBdfW * h, rhs_);
    std::copy(rhs_.begin(), rhs_.end(), out.begin());
  }

 private:
  // Solves (I - c W) x = b in place.
  void solve_shifted(double c, std::span<double> b) {
    for (std::size_t i = 0; i < n_; ++i) {
      lo_[i] = -c * w_.lower[i];
      di_[i] = 1.0 - c * w_.diag[i];
      up_[i] = -c * w_.upper[i];
    }
    solve_tridiagonal(lo_, di_, up_, b, scratch_);
  }

  const TransitionMatrix& w_;
  std::size_t n_;
  std::vector<double> wy_, rhs_, stage_, lo_, di_, up_, scratch_;
};

void normalize(std::vector<double>& p, double t) {
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(std::fabs(sum - 1.0) <= 1e-6)) {
    throw SolverError("master equation: normalization drifted to " + std::to_string(sum) +
                      " at t=" + std::to_string(t));
  }
  double clipped = 0.0;
  for (double& v : p) {
    if (v < 0.0) v = 0.0;
    clipped += v;
  }
  for (double& v : p) v /= clipped;
}

}  // namespace

void TransitionMatrix::apply(std::span<const double> x, std::span<double> y) const {
  simd::tridiag_matvec(lower, diag, upper, x, y);
}

ProbabilityVector point_mass(const KineticParams& params, std::int64_t length) {
  const std::int64_t first = params.min_length();
  const std::int64_t last = params.max_length();
  if (length < first || length > last) throw ValidationError("point mass outside state space");
  ProbabilityVector pv;
  pv.first_length = first;
  pv.p.assign(static_cast<std::size_t>(last - first + 1), 0.0);
  pv.p[static_cast<std::size_t>(length - first)] = 1.0;
  return pv;
}

TransitionMatrix build_generator(const KineticParams& params, const GeneratorOptions& options) {
  params.validate();
  const std::int64_t first = params.min_length();
  const std::int64_t last = params.max_length();
  if (last < first + 1) throw ValidationError("master equation needs max_length >= min_length + 1");
  const auto states = static_cast<std::size_t>(last - first + 1);
  if (states > options.state_cap) {
    throw ValidationError("master equation state space (" + std::to_string(states) +
                          " states) exceeds cap " + std::to_string(options.state_cap));
  }
  const std::int64_t start = options.initial_length != 0 ? options.initial_length : first;
  const std::int64_t n_total = params.total_count();

  TransitionMatrix w;
  w.first_length = first;
  w.lower.assign(states, 0.0);
  w.diag.assign(states, 0.0);
  w.upper.assign(states, 0.0);
  for (std::size_t s = 0; s < states; ++s) {
    const std::int64_t length = first + static_cast<std::int64_t>(s);
    if (length == last) continue;  // absorbing
    const std::int64_t n_free = n_total - (length - start);
    const double up = propensity_polymerization(std::max<std::int64_t>(n_free, 0), params);
    const double down = propensity_depolymerization({n_free, length, 0.0}, params);
    w.lower[s + 1] = up;
    if (s > 0) w.upper[s - 1] = down;
    w.diag[s] = -(up + down);
  }
  return w;
}

std::vector<ProbabilityVector> integrate_master(const ProbabilityVector& p0,
                                                const TransitionMatrix& gen,
                                                std::span<const double> sample_times,
                                                const MasterOptions& options) {
  if (p0.p.size() != gen.size() || p0.first_length != gen.first_length)
    throw ValidationError("probability vector does not match generator state space");
  if (!std::is_sorted(sample_times.begin(), sample_times.end()))
    throw ValidationError("sample times must be sorted");
  for (double v : p0.p)
    if (!(v >= 0.0)) throw ValidationError("initial probabilities must be nonnegative");

  const std::size_t n = gen.size();
  double max_rate = 0.0;
  for (double d : gen.diag) max_rate = std::max(max_rate, -d);
  double h = options.initial_step > 0.0 ? options.initial_step
                                        : (max_rate > 0.0 ? 1e-3 / max_rate : 1.0);

  TrBdf2 stepper(gen);
  std::vector<double> y = p0.p;
  std::vector<double> full(n), half(n), two_half(n);
  double t = p0.t;
  std::size_t steps = 0;
  std::vector<ProbabilityVector> out;
  out.reserve(sample_times.size());

  for (double target : sample_times) {
    if (target < p0.t) throw ValidationError("sample time precedes initial time");
    while (t < target) {
      const bool last = h >= target - t;
      const double step = last ? target - t : h;
      stepper.step(y, step, full);
      stepper.step(y, 0.5 * step, half);
      stepper.step(half, 0.5 * step, two_half);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double scale = options.atol + options.rtol * std::fabs(two_half[i]);
        err = std::max(err, std::fabs(two_half[i] - full[i]) / (3.0 * scale));
      }
      const double factor = err > 0.0 ? std::clamp(0.9 * std::cbrt(1.0 / err), 0.2, 5.0) : 5.0;
      if (err <= 1.0) {
        y.swap(two_half);
        t = last ? target : t + step;
        normalize(y, t);
        h = std::max(step, h) * factor;
      } else {
        h = step * factor;
      }
      if (++steps > options.max_steps) throw SolverError("master equation: step budget exhausted");
      if (!(h > 0.0) || !std::isfinite(h)) throw SolverError("master equation: step size underflow");
    }
    out.push_back({gen.first_length, y, target});
  }
  return out;
}

ProbabilityVector integrate_master(const ProbabilityVector& p0, const TransitionMatrix& gen,
                                   double t_end, const MasterOptions& options) {
  const double times[] = {p0.t + t_end};
  if (t_end == 0.0) return p0;
  return integrate_master(p0, gen, times, options).front();
}

LengthMoments mean_and_variance(const ProbabilityVector& p) {
  const std::size_t n = p.p.size();
  std::vector<double> ones(n, 1.0), offsets(n);
  // Moments about the first length keep the variance well conditioned.
  for (std::size_t i = 0; i < n; ++i) offsets[i] = static_cast<double>(i);
  const simd::Moments m = simd::weighted_moments(ones, offsets, p.p);
  const double mean_offset = m.m1 / m.m0;
  const double var = std::max(0.0, m.m2 / m.m0 - mean_offset * mean_offset);
  return {static_cast<double>(p.first_length) + mean_offset, var};
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  return 0.5 * simd::abs_diff_sum(a, b);
}

}  // namespace nanowire
