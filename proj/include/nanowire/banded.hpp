// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace nanowire {

/// Thomas algorithm for a tridiagonal system; row i reads
/// lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// No pivoting: the caller guarantees diagonal dominance.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs_inout,
                       std::span<double> scratch);

/// LU factors of a pentadiagonal matrix (no pivoting), reusable across
/// right-hand sides.
class PentadiagonalLu {
 public:
  PentadiagonalLu() = default;
  PentadiagonalLu(std::span<const double> lower2, std::span<const double> lower1,
                  std::span<const double> diag, std::span<const double> upper1,
                  std::span<const double> upper2);

  void solve(std::span<double> rhs_inout) const;
  std::size_t size() const { return d_.size(); }

 private:
  // L has unit diagonal with sub-diagonals m1_, m2_; U has d_, u1_, u2_.
  std::vector<double> m1_, m2_, d_, u1_, u2_;
};

}  // namespace nanowire
