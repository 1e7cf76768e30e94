// SPDX-License-Identifier: Apache-2.0
// NEON variants for AArch64 (two doubles per register).
#include <arm_neon.h>

#include <cmath>

#include "kernel_table.hpp"

namespace nanowire::simd::detail {
namespace {

constexpr std::size_t kLanes = 2;

void tridiag(const double* lower, const double* diag, const double* upper, const double* x,
             double* y, std::size_t n) {
  if (n < kLanes + 2) {
    for (std::size_t i = 0; i < n; ++i) y[i] = tridiag_row(lower, diag, upper, x, i, n);
    return;
  }
  y[0] = tridiag_row(lower, diag, upper, x, 0, n);
  std::size_t i = 1;
  for (; i + kLanes <= n - 1; i += kLanes) {
    float64x2_t acc = vmulq_f64(vld1q_f64(lower + i), vld1q_f64(x + i - 1));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(diag + i), vld1q_f64(x + i)));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(upper + i), vld1q_f64(x + i + 1)));
    vst1q_f64(y + i, acc);
  }
  for (; i < n; ++i) y[i] = tridiag_row(lower, diag, upper, x, i, n);
}

void pentadiag(const double* l2, const double* l1, const double* d, const double* u1,
               const double* u2, const double* x, double* y, std::size_t n) {
  if (n < kLanes + 4) {
    for (std::size_t i = 0; i < n; ++i) y[i] = pentadiag_row(l2, l1, d, u1, u2, x, i, n);
    return;
  }
  y[0] = pentadiag_row(l2, l1, d, u1, u2, x, 0, n);
  y[1] = pentadiag_row(l2, l1, d, u1, u2, x, 1, n);
  std::size_t i = 2;
  for (; i + kLanes <= n - 2; i += kLanes) {
    float64x2_t acc = vmulq_f64(vld1q_f64(l2 + i), vld1q_f64(x + i - 2));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(l1 + i), vld1q_f64(x + i - 1)));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(d + i), vld1q_f64(x + i)));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(u1 + i), vld1q_f64(x + i + 1)));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(u2 + i), vld1q_f64(x + i + 2)));
    vst1q_f64(y + i, acc);
  }
  for (; i < n; ++i) y[i] = pentadiag_row(l2, l1, d, u1, u2, x, i, n);
}

void axpby_impl(double alpha, const double* x, double beta, const double* y, double* out,
                std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  const float64x2_t vb = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    vst1q_f64(out + i,
              vaddq_f64(vmulq_f64(va, vld1q_f64(x + i)), vmulq_f64(vb, vld1q_f64(y + i))));
  }
  for (; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

Moments moments(const double* w, const double* x, const double* p, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0);
  float64x2_t s1 = vdupq_n_f64(0.0);
  float64x2_t s2 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t wp = vmulq_f64(vld1q_f64(w + i), vld1q_f64(p + i));
    const float64x2_t wpx = vmulq_f64(wp, vx);
    s0 = vaddq_f64(s0, wp);
    s1 = vaddq_f64(s1, wpx);
    s2 = vaddq_f64(s2, vmulq_f64(wpx, vx));
  }
  Moments m{vaddvq_f64(s0), vaddvq_f64(s1), vaddvq_f64(s2)};
  for (; i < n; ++i) {
    const double wp = w[i] * p[i];
    m.m0 += wp;
    m.m1 += wp * x[i];
    m.m2 += wp * x[i] * x[i];
  }
  return m;
}

double abs_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

void phase(const double* n, const double* a, double k_plus, double c0, double c1, double* dn,
           double* da, std::size_t count) {
  const float64x2_t m2k = vdupq_n_f64(-2.0 * k_plus);
  const float64x2_t vc0 = vdupq_n_f64(c0);
  const float64x2_t vc1 = vdupq_n_f64(c1);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const float64x2_t vn = vld1q_f64(n + i);
    float64x2_t r = vaddq_f64(vmulq_f64(m2k, vmulq_f64(vn, vn)), vc0);
    r = vaddq_f64(r, vmulq_f64(vc1, vld1q_f64(a + i)));
    vst1q_f64(dn + i, r);
    vst1q_f64(da + i, vnegq_f64(r));
  }
  for (; i < count; ++i) {
    const double r = phase_dn(n[i], a[i], k_plus, c0, c1);
    dn[i] = r;
    da[i] = -r;
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{tridiag, pentadiag, axpby_impl, moments, abs_diff, phase};
  return table;
}

}  // namespace nanowire::simd::detail
