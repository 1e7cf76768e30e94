// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops shared by the grid solvers. Every kernel has a
// scalar reference implementation; vector variants are picked once at
// runtime from what the CPU supports. Elementwise kernels are bit-identical
// across backends (no contraction, same operation order). Reductions are
// equal up to summation order.
//
// NANOWIRE_SIMD=scalar|avx2|neon in the environment pins the backend.

#include <span>
#include <string_view>

namespace nanowire::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend backend);
bool supported(Backend backend);
Backend active_backend();
/// Switches the process-wide backend. Throws if the CPU lacks it.
void force_backend(Backend backend);

struct Moments {
  double m0 = 0.0;  ///< sum w p
  double m1 = 0.0;  ///< sum w p x
  double m2 = 0.0;  ///< sum w p x^2
};

/// y[i] = lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1]; out-of-range
/// neighbours count as zero, so lower[0] and upper[n-1] are ignored.
void tridiag_matvec(std::span<const double> lower, std::span<const double> diag,
                    std::span<const double> upper, std::span<const double> x,
                    std::span<double> y);

/// Five-band version: bands[0..4] multiply x[i-2] .. x[i+2].
void pentadiag_matvec(std::span<const double> lower2, std::span<const double> lower1,
                      std::span<const double> diag, std::span<const double> upper1,
                      std::span<const double> upper2, std::span<const double> x,
                      std::span<double> y);

/// out = alpha x + beta y
void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out);

Moments weighted_moments(std::span<const double> w, std::span<const double> x,
                         std::span<const double> p);

/// sum |a - b|
double abs_diff_sum(std::span<const double> a, std::span<const double> b);

/// dn = -2 k+ n^2 + c0 + c1 a, da = -dn. (c0, c1) = (k-, 0) is the rate law,
/// (0, k-) the nullcline balance form.
void phase_rates(std::span<const double> n, std::span<const double> a, double k_plus, double c0,
                 double c1, std::span<double> dn, std::span<double> da);

}  // namespace nanowire::simd
