// SPDX-License-Identifier: Apache-2.0
// Test-only oracles. Nothing here calls into the library's solver paths.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/// Composite Simpson rule in long double on [a, b] with `panels` (even) panels.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, std::size_t panels) {
  if (panels % 2 != 0) ++panels;
  const long double h = (b - a) / static_cast<long double>(panels);
  long double sum = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i)
    sum += (i % 2 == 1 ? 4.0L : 2.0L) * f(a + h * static_cast<long double>(i));
  return sum * h / 3.0L;
}

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a[i][k] * x[k];
    x[i] = v / a[i][i];
  }
  return x;
}

/// exp(t W) p0 for a dense generator by uniformization: with L >= max exit
/// rate, exp(tW) = sum_k Poisson(Lt; k) (I + W/L)^k. Exact up to the
/// truncated Poisson tail (< tol) and rounding; all terms are nonnegative.
inline std::vector<double> uniformized_expm(const std::vector<std::vector<double>>& w,
                                            std::vector<double> p0, double t,
                                            double tol = 1e-14) {
  const std::size_t n = p0.size();
  double rate = 0.0;
  for (std::size_t i = 0; i < n; ++i) rate = std::max(rate, -w[i][i]);
  if (rate == 0.0 || t == 0.0) return p0;
  rate *= 1.02;
  const double lt = rate * t;
  std::vector<long double> acc(n, 0.0L);
  std::vector<double> v = p0, next(n);
  // Poisson weights via logs to survive large lt.
  long double cumulative = 0.0L;
  for (std::size_t k = 0;; ++k) {
    const long double logw = -lt + static_cast<long double>(k) * std::log(lt) - std::lgamma(k + 1.0L);
    const long double weight = std::exp(logw);
    for (std::size_t i = 0; i < n; ++i) acc[i] += weight * v[i];
    cumulative += weight;
    if (static_cast<double>(k) > lt && 1.0L - cumulative < tol) break;
    for (std::size_t i = 0; i < n; ++i) {
      long double s = v[i];
      for (std::size_t j = 0; j < n; ++j) s += w[i][j] * v[j] / rate;
      next[i] = static_cast<double>(s);
    }
    v.swap(next);
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(acc[i]);
  return out;
}

}  // namespace oracle
