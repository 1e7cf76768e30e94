// SPDX-License-Identifier: Apache-2.0
#include "nanowire/banded.hpp"

#include <cmath>
#include <stdexcept>

#include "nanowire/error.hpp"

namespace nanowire {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs,
                       std::span<double> scratch) {
  const std::size_t n = diag.size();
  if (n == 0) return;
  double beta = diag[0];
  if (beta == 0.0) throw SolverError("singular tridiagonal system");
  rhs[0] /= beta;
  for (std::size_t i = 1; i < n; ++i) {
    scratch[i] = upper[i - 1] / beta;
    beta = diag[i] - lower[i] * scratch[i];
    if (beta == 0.0) throw SolverError("singular tridiagonal system");
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i + 1] * rhs[i + 1];
}

PentadiagonalLu::PentadiagonalLu(std::span<const double> l2, std::span<const double> l1,
                                 std::span<const double> d, std::span<const double> u1,
                                 std::span<const double> u2)
    : m1_(d.size(), 0.0), m2_(d.size(), 0.0), d_(d.begin(), d.end()),
      u1_(u1.begin(), u1.end()), u2_(u2.begin(), u2.end()) {
  const std::size_t n = d.size();
  // Row i of A: l2[i] a[i-2] + l1[i] a[i-1] + d[i] a[i] + u1[i] a[i+1] + u2[i] a[i+2].
  // Banded Doolittle elimination; the working copy of row i's sub-diagonal
  // entries is updated as earlier pivots are eliminated.
  std::vector<double> sub1(l1.begin(), l1.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (d_[i] == 0.0 || !std::isfinite(d_[i])) throw SolverError("singular pentadiagonal system");
    if (i + 1 < n) {
      const double f = sub1[i + 1] / d_[i];
      m1_[i + 1] = f;
      d_[i + 1] -= f * u1_[i];
      if (i + 2 < n) u1_[i + 1] -= f * u2_[i];
    }
    if (i + 2 < n) {
      const double f = l2[i + 2] / d_[i];
      m2_[i + 2] = f;
      sub1[i + 2] -= f * u1_[i];
      d_[i + 2] -= f * u2_[i];
    }
  }
}

void PentadiagonalLu::solve(std::span<double> b) const {
  const std::size_t n = d_.size();
  if (b.size() != n) throw std::invalid_argument("PentadiagonalLu: size mismatch");
  for (std::size_t i = 1; i < n; ++i) {
    b[i] -= m1_[i] * b[i - 1];
    if (i >= 2) b[i] -= m2_[i] * b[i - 2];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = b[i];
    if (i + 1 < n) v -= u1_[i] * b[i + 1];
    if (i + 2 < n) v -= u2_[i] * b[i + 2];
    b[i] = v / d_[i];
  }
}

}  // namespace nanowire
