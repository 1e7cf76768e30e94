// SPDX-License-Identifier: Apache-2.0
#include "nanowire/fokker_planck.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "nanowire/banded.hpp"
#include "nanowire/error.hpp"
#include "nanowire/kinetics.hpp"
#include "nanowire/simd/kernels.hpp"

namespace nanowire {
namespace {

// Flux through interface k (between nodes k and k+1) as a linear form over
// nodes k-1 .. k+2.
struct FluxStencil {
  std::array<double, 4> c{};  // nodes k-1, k, k+1, k+2
};

FluxStencil flux_stencil(std::size_t k, std::size_t nodes, int order, double e, double d,
                         double dx) {
  FluxStencil s;
  if (order >= 4 && k >= 1 && k + 2 <= nodes - 1) {
    s.c[0] = -e / 12.0 - d / (12.0 * dx);
    s.c[1] = 7.0 * e / 12.0 + 15.0 * d / (12.0 * dx);
    s.c[2] = 7.0 * e / 12.0 - 15.0 * d / (12.0 * dx);
    s.c[3] = -e / 12.0 + d / (12.0 * dx);
  } else {
    s.c[1] = e / 2.0 + d / dx;
    s.c[2] = e / 2.0 - d / dx;
  }
  return s;
}

// Five bands of B = M^-1 A where M holds control-volume widths and A p is
// the net inflow; unknowns are nodes 0 .. n-1 (node n is the absorbing wall).
struct Operator {
  std::vector<double> l2, l1, d, u1, u2;
  double outflow = 0.0;  // J at the wall = outflow * p[n-1]
};

Operator build_operator(std::size_t n, std::span<const double> widths, int order, double e,
                        double diff, double dx) {
  Operator op;
  op.l2.assign(n, 0.0);
  op.l1.assign(n, 0.0);
  op.d.assign(n, 0.0);
  op.u1.assign(n, 0.0);
  op.u2.assign(n, 0.0);
  auto add = [&](std::size_t row, std::ptrdiff_t col, double v) {
    if (col < 0 || col >= static_cast<std::ptrdiff_t>(n)) return;  // wall node is zero
    const std::ptrdiff_t off = col - static_cast<std::ptrdiff_t>(row);
    const double scaled = v / widths[row];
    switch (off) {
      case -2: op.l2[row] += scaled; break;
      case -1: op.l1[row] += scaled; break;
      case 0: op.d[row] += scaled; break;
      case 1: op.u1[row] += scaled; break;
      case 2: op.u2[row] += scaled; break;
      default: break;
    }
  };
  for (std::size_t k = 0; k < n; ++k) {
    const FluxStencil s = flux_stencil(k, n + 1, order, e, diff, dx);
    for (std::size_t m = 0; m < 4; ++m) {
      const auto node = static_cast<std::ptrdiff_t>(k) - 1 + static_cast<std::ptrdiff_t>(m);
      if (s.c[m] == 0.0) continue;
      add(k, node, -s.c[m]);                  // leaves node k
      if (k + 1 < n) add(k + 1, node, s.c[m]);  // enters node k+1
    }
    if (k + 1 == n) op.outflow = s.c[1];
  }
  return op;
}

class CrankNicolson {
 public:
  CrankNicolson(const Operator& op, double dt) : op_(op), dt_(dt) {
    const std::size_t n = op.d.size();
    std::vector<double> l2(n), l1(n), d(n), u1(n), u2(n);
    ex_l2_.resize(n), ex_l1_.resize(n), ex_d_.resize(n), ex_u1_.resize(n), ex_u2_.resize(n);
    const double h = 0.5 * dt;
    for (std::size_t i = 0; i < n; ++i) {
      l2[i] = -h * op.l2[i], ex_l2_[i] = h * op.l2[i];
      l1[i] = -h * op.l1[i], ex_l1_[i] = h * op.l1[i];
      d[i] = 1.0 - h * op.d[i], ex_d_[i] = 1.0 + h * op.d[i];
      u1[i] = -h * op.u1[i], ex_u1_[i] = h * op.u1[i];
      u2[i] = -h * op.u2[i], ex_u2_[i] = h * op.u2[i];
    }
    lu_ = PentadiagonalLu(l2, l1, d, u1, u2);
    rhs_.resize(n);
  }

  /// Advances p in place; returns the probability absorbed during the step.
  double step(std::span<double> p) {
    const double out_before = op_.outflow * p.back();
    simd::pentadiag_matvec(ex_l2_, ex_l1_, ex_d_, ex_u1_, ex_u2_, p, rhs_);
    lu_.solve(rhs_);
    std::copy(rhs_.begin(), rhs_.end(), p.begin());
    return 0.5 * dt_ * (out_before + op_.outflow * p.back());
  }

  double dt() const { return dt_; }

 private:
  Operator op_;
  double dt_;
  std::vector<double> ex_l2_, ex_l1_, ex_d_, ex_u1_, ex_u2_, rhs_;
  PentadiagonalLu lu_;
};

std::vector<double> trapezoid_weights(std::size_t nodes, double dx) {
  std::vector<double> w(nodes, dx);
  w.front() = 0.5 * dx;
  w.back() = 0.5 * dx;
  return w;
}

}  // namespace

FpCoefficients fp_coefficients_at(double n, const KineticParams& params) {
  const double delta = params.delta;
  return {(params.k_plus * n - params.k_minus) * delta,
          0.5 * (params.k_plus * n + params.k_minus) * delta * delta};
}

FpCoefficients fp_coefficients(const KineticParams& params) {
  return fp_coefficients_at(params.initial_concentration(), params);
}

double gaussian_density(double x, double mean, double variance) {
  const double u = x - mean;
  return std::exp(-u * u / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double analytic_density(double x, double t, const KineticParams& params) {
  if (!(t > 0.0)) throw ValidationError("analytic density requires t > 0");
  const FpCoefficients c = fp_coefficients(params);
  return gaussian_density(x, params.x0 + c.drift * t, 2.0 * c.diffusion * t);
}

DensityMoments density_moments(const DensityField& field) {
  if (field.x.size() < 2) return {};
  const double dx = field.x[1] - field.x[0];
  const std::vector<double> w = trapezoid_weights(field.x.size(), dx);
  // Moments about x0 keep the variance well conditioned.
  std::vector<double> offset(field.x.size());
  for (std::size_t i = 0; i < offset.size(); ++i) offset[i] = field.x[i] - field.x[0];
  const simd::Moments m = simd::weighted_moments(w, offset, field.p);
  DensityMoments out;
  out.mass = m.m0;
  if (m.m0 > 0.0) {
    const double mean_off = m.m1 / m.m0;
    out.mean = field.x[0] + mean_off;
    out.variance = std::max(0.0, m.m2 / m.m0 - mean_off * mean_off);
  }
  return out;
}

double peak_position(const DensityField& field) {
  if (field.p.empty()) return 0.0;
  const auto it = std::max_element(field.p.begin(), field.p.end());
  return field.x[static_cast<std::size_t>(it - field.p.begin())];
}

FpSolution solve_fp_pde(const KineticParams& params, std::size_t grid_size,
                        std::span<const double> t_samples, const FpOptions& options) {
  params.validate();
  if (grid_size < 32) throw ValidationError("grid_size must be >= 32");
  if (options.spatial_order != 2 && options.spatial_order != 4)
    throw ValidationError("spatial_order must be 2 or 4");
  if (!std::is_sorted(t_samples.begin(), t_samples.end()) ||
      (!t_samples.empty() && t_samples.front() < 0.0))
    throw ValidationError("sample times must be sorted and nonnegative");

  const std::size_t nodes = grid_size;
  const std::size_t n = nodes - 1;
  const double dx = (params.x_l - params.x0) / static_cast<double>(nodes - 1);
  std::vector<double> x(nodes);
  for (std::size_t j = 0; j < nodes; ++j) x[j] = params.x0 + static_cast<double>(j) * dx;
  std::vector<double> widths(n, dx);
  widths[0] = 0.5 * dx;

  auto coefficients_at = [&](double t) {
    if (options.mode == CoefficientMode::Frozen) return fp_coefficients(params);
    return fp_coefficients_at(exact_concentration(t, params), params);
  };

  FpSolution sol;
  sol.dx = dx;
  const FpCoefficients c0 = coefficients_at(0.0);
  if (!(c0.diffusion > 0.0)) throw ValidationError("diffusion coefficient must be > 0");
  sol.peclet = std::fabs(c0.drift) * dx / c0.diffusion;
  if (sol.peclet > 2.0) {
    sol.warnings.push_back("grid Peclet number " + std::to_string(sol.peclet) +
                           " exceeds 2; refine the grid to avoid oscillations");
  }
  double dt = options.dt;
  if (!(dt > 0.0)) {
    dt = 0.05 * dx * dx / c0.diffusion;
    if (c0.drift != 0.0) dt = std::min(dt, 0.1 * dx / std::fabs(c0.drift));
  }
  sol.dt = dt;

  const double center = options.initial_center.value_or(params.x0);
  const double variance =
      options.initial_variance > 0.0 ? options.initial_variance : 16.0 * dx * dx;
  std::vector<double> p(n);
  for (std::size_t j = 0; j < n; ++j) p[j] = gaussian_density(x[j], center, variance);
  double mass = 0.0;
  for (std::size_t j = 0; j < n; ++j) mass += widths[j] * p[j];
  if (!(mass > 0.0)) throw ValidationError("initial Gaussian has no mass on the grid");
  for (double& v : p) v /= mass;

  auto interior_mass = [&] {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) m += widths[j] * p[j];
    return m;
  };

  double t = 0.0;
  double absorbed = 0.0;
  std::optional<CrankNicolson> frozen;
  auto emit = [&](double at) {
    DensityField f;
    f.t = at;
    f.x = x;
    f.p.assign(p.begin(), p.end());
    f.p.push_back(0.0);
    f.absorbed = absorbed;
    sol.fields.push_back(std::move(f));
  };

  for (double target : t_samples) {
    const double gap = target - t;
    if (gap > 0.0) {
      const auto steps = static_cast<std::size_t>(std::ceil(gap / dt - 1e-9));
      const double h = gap / static_cast<double>(steps);
      for (std::size_t s = 0; s < steps; ++s) {
        const double before = interior_mass() + absorbed;
        double gained;
        if (options.mode == CoefficientMode::Frozen) {
          if (!frozen || frozen->dt() != h) {
            frozen.emplace(build_operator(n, widths, options.spatial_order, c0.drift,
                                          c0.diffusion, dx),
                           h);
          }
          gained = frozen->step(p);
        } else {
          const double t_mid = t + (static_cast<double>(s) + 0.5) * h;
          const FpCoefficients c = coefficients_at(t_mid);
          if (!(c.diffusion > 0.0)) throw SolverError("diffusion coefficient vanished");
          CrankNicolson cn(build_operator(n, widths, options.spatial_order, c.drift,
                                          c.diffusion, dx),
                           h);
          gained = cn.step(p);
        }
        absorbed += gained;
        const double drift = std::fabs(interior_mass() + absorbed - before);
        sol.max_mass_drift = std::max(sol.max_mass_drift, drift);
        if (drift > 1e-6) throw SolverError("Fokker-Planck step lost mass conservation");
      }
      t = target;
    }
    for (double v : p) sol.min_value = std::min(sol.min_value, v);
    emit(target);
  }
  return sol;
}

}  // namespace nanowire
