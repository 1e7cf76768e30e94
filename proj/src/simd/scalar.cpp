// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "kernel_table.hpp"

namespace nanowire::simd::detail {
namespace {

void tridiag(const double* lower, const double* diag, const double* upper, const double* x,
             double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = tridiag_row(lower, diag, upper, x, i, n);
}

void pentadiag(const double* l2, const double* l1, const double* d, const double* u1,
               const double* u2, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = pentadiag_row(l2, l1, d, u1, u2, x, i, n);
}

void axpby_impl(double alpha, const double* x, double beta, const double* y, double* out,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

Moments moments(const double* w, const double* x, const double* p, std::size_t n) {
  Moments m;
  for (std::size_t i = 0; i < n; ++i) {
    const double wp = w[i] * p[i];
    m.m0 += wp;
    m.m1 += wp * x[i];
    m.m2 += wp * x[i] * x[i];
  }
  return m;
}

double abs_diff(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

void phase(const double* n, const double* a, double k_plus, double c0, double c1, double* dn,
           double* da, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const double r = phase_dn(n[i], a[i], k_plus, c0, c1);
    dn[i] = r;
    da[i] = -r;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{tridiag, pentadiag, axpby_impl, moments, abs_diff, phase};
  return table;
}

}  // namespace nanowire::simd::detail
