// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nanowire {

/// sum_{a,b} coeff[a][b] x^a y^b
struct Polynomial2 {
  std::vector<std::vector<double>> coeff;

  /// Highest x and y powers with a nonzero coefficient (0 for the zero polynomial).
  std::size_t degree_x() const;
  std::size_t degree_y() const;
};

/// Differential-transform coefficients F(k, h), k <= order_x, h <= order_y,
/// taken about (x0, y0).
class DtmTable {
 public:
  DtmTable(std::size_t order_x, std::size_t order_y, double x0 = 0.0, double y0 = 0.0);

  double operator()(std::size_t k, std::size_t h) const { return f_[k * (order_y_ + 1) + h]; }
  double& operator()(std::size_t k, std::size_t h) { return f_[k * (order_y_ + 1) + h]; }

  std::size_t order_x() const { return order_x_; }
  std::size_t order_y() const { return order_y_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }

 private:
  std::size_t order_x_, order_y_;
  double x0_, y0_;
  std::vector<double> f_;
};

/// F(k, h) = d^{k+h} f / dx^k dy^h (x0, y0) / (k! h!), exact for polynomials.
/// Throws ValidationError when f's degree exceeds the requested orders.
DtmTable dtm_transform(const Polynomial2& f, std::size_t order_x, std::size_t order_y,
                       double x0 = 0.0, double y0 = 0.0);

/// sum_k sum_h F(k, h) (x - x0)^k (y - y0)^h
double dtm_inverse(const DtmTable& table, double x, double y);

/// Series solution of p_t = -drift p_x + diffusion p_xx from the recurrence
/// (h + 1) F(k, h+1) = -drift (k+1) F(k+1, h) + diffusion (k+1)(k+2) F(k+2, h),
/// seeded with F(k, 0) = initial[k], the Taylor coefficients of p(., 0)
/// about x0. The time expansion point is 0.
DtmTable dtm_drift_diffusion(std::span<const double> initial, double drift, double diffusion,
                             std::size_t order_x, std::size_t order_t, double x0 = 0.0);

}  // namespace nanowire
