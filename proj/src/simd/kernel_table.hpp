// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "nanowire/simd/kernels.hpp"

namespace nanowire::simd::detail {

struct KernelTable {
  void (*tridiag_matvec)(const double* lower, const double* diag, const double* upper,
                         const double* x, double* y, std::size_t n);
  void (*pentadiag_matvec)(const double* l2, const double* l1, const double* d,
                           const double* u1, const double* u2, const double* x, double* y,
                           std::size_t n);
  void (*axpby)(double alpha, const double* x, double beta, const double* y, double* out,
                std::size_t n);
  Moments (*weighted_moments)(const double* w, const double* x, const double* p,
                              std::size_t n);
  double (*abs_diff_sum)(const double* a, const double* b, std::size_t n);
  void (*phase_rates)(const double* n, const double* a, double k_plus, double c0, double c1,
                      double* dn, double* da, std::size_t count);
};

const KernelTable& scalar_table();
#if defined(NANOWIRE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(NANOWIRE_HAVE_NEON)
const KernelTable& neon_table();
#endif

// Scalar pieces reused by the vector variants for ragged edges.
inline double tridiag_row(const double* lower, const double* diag, const double* upper,
                          const double* x, std::size_t i, std::size_t n) {
  double acc = 0.0;
  if (i > 0) acc = lower[i] * x[i - 1];
  acc = acc + diag[i] * x[i];
  if (i + 1 < n) acc = acc + upper[i] * x[i + 1];
  return acc;
}

inline double pentadiag_row(const double* l2, const double* l1, const double* d,
                            const double* u1, const double* u2, const double* x, std::size_t i,
                            std::size_t n) {
  double acc = 0.0;
  if (i > 1) acc = l2[i] * x[i - 2];
  if (i > 0) acc = acc + l1[i] * x[i - 1];
  acc = acc + d[i] * x[i];
  if (i + 1 < n) acc = acc + u1[i] * x[i + 1];
  if (i + 2 < n) acc = acc + u2[i] * x[i + 2];
  return acc;
}

inline double phase_dn(double n, double a, double k_plus, double c0, double c1) {
  const double m2k = -2.0 * k_plus;
  return m2k * (n * n) + c0 + c1 * a;
}

}  // namespace nanowire::simd::detail
