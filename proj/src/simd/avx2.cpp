// SPDX-License-Identifier: Apache-2.0
// AVX2 variants. Compiled with -mavx2 -mfma -ffp-contract=off; FMA is only
// used where the scalar reference has no bit-exactness contract (none today).
#include <immintrin.h>

#include <cmath>

#include "kernel_table.hpp"

namespace nanowire::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

void tridiag(const double* lower, const double* diag, const double* upper, const double* x,
             double* y, std::size_t n) {
  if (n < kLanes + 2) {
    for (std::size_t i = 0; i < n; ++i) y[i] = tridiag_row(lower, diag, upper, x, i, n);
    return;
  }
  y[0] = tridiag_row(lower, diag, upper, x, 0, n);
  std::size_t i = 1;
  for (; i + kLanes <= n - 1; i += kLanes) {
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(lower + i), _mm256_loadu_pd(x + i - 1));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(diag + i), _mm256_loadu_pd(x + i)));
    acc = _mm256_add_pd(acc,
                        _mm256_mul_pd(_mm256_loadu_pd(upper + i), _mm256_loadu_pd(x + i + 1)));
    _mm256_storeu_pd(y + i, acc);
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
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(l2 + i), _mm256_loadu_pd(x + i - 2));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(l1 + i), _mm256_loadu_pd(x + i - 1)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(x + i)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(u1 + i), _mm256_loadu_pd(x + i + 1)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(u2 + i), _mm256_loadu_pd(x + i + 2)));
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i < n; ++i) y[i] = pentadiag_row(l2, l1, d, u1, u2, x, i, n);
}

void axpby_impl(double alpha, const double* x, double beta, const double* y, double* out,
                std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d r = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)),
                                    _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

Moments moments(const double* w, const double* x, const double* p, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d wp = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(p + i));
    const __m256d wpx = _mm256_mul_pd(wp, vx);
    s0 = _mm256_add_pd(s0, wp);
    s1 = _mm256_add_pd(s1, wpx);
    s2 = _mm256_add_pd(s2, _mm256_mul_pd(wpx, vx));
  }
  Moments m{hsum(s0), hsum(s1), hsum(s2)};
  for (; i < n; ++i) {
    const double wp = w[i] * p[i];
    m.m0 += wp;
    m.m1 += wp * x[i];
    m.m2 += wp * x[i] * x[i];
  }
  return m;
}

double abs_diff(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

void phase(const double* n, const double* a, double k_plus, double c0, double c1, double* dn,
           double* da, std::size_t count) {
  const __m256d m2k = _mm256_set1_pd(-2.0 * k_plus);
  const __m256d vc0 = _mm256_set1_pd(c0);
  const __m256d vc1 = _mm256_set1_pd(c1);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + kLanes <= count; i += kLanes) {
    const __m256d vn = _mm256_loadu_pd(n + i);
    __m256d r = _mm256_add_pd(_mm256_mul_pd(m2k, _mm256_mul_pd(vn, vn)), vc0);
    r = _mm256_add_pd(r, _mm256_mul_pd(vc1, _mm256_loadu_pd(a + i)));
    _mm256_storeu_pd(dn + i, r);
    _mm256_storeu_pd(da + i, _mm256_xor_pd(r, sign));
  }
  for (; i < count; ++i) {
    const double r = phase_dn(n[i], a[i], k_plus, c0, c1);
    dn[i] = r;
    da[i] = -r;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{tridiag, pentadiag, axpby_impl, moments, abs_diff, phase};
  return table;
}

}  // namespace nanowire::simd::detail
