// SPDX-License-Identifier: Apache-2.0
#include "nanowire/dtm.hpp"

#include <algorithm>

#include "nanowire/error.hpp"

namespace nanowire {
namespace {

// C(n, k) as a double; exact well past the orders used here.
double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

double power(double base, std::size_t e) {
  double r = 1.0;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

std::size_t Polynomial2::degree_x() const {
  std::size_t deg = 0;
  for (std::size_t a = 0; a < coeff.size(); ++a)
    if (std::any_of(coeff[a].begin(), coeff[a].end(), [](double v) { return v != 0.0; })) deg = a;
  return deg;
}

std::size_t Polynomial2::degree_y() const {
  std::size_t deg = 0;
  for (const auto& row : coeff)
    for (std::size_t b = 0; b < row.size(); ++b)
      if (row[b] != 0.0) deg = std::max(deg, b);
  return deg;
}

DtmTable::DtmTable(std::size_t order_x, std::size_t order_y, double x0, double y0)
    : order_x_(order_x), order_y_(order_y), x0_(x0), y0_(y0),
      f_((order_x + 1) * (order_y + 1), 0.0) {}

DtmTable dtm_transform(const Polynomial2& f, std::size_t order_x, std::size_t order_y, double x0,
                       double y0) {
  if (f.degree_x() > order_x || f.degree_y() > order_y)
    throw ValidationError("polynomial degree exceeds the differential transform orders");
  DtmTable table(order_x, order_y, x0, y0);
  // Re-expanding x^a y^b about (x0, y0): the (x - x0)^k (y - y0)^h coefficient
  // is C(a, k) x0^(a-k) C(b, h) y0^(b-h), which equals the scaled derivative.
  for (std::size_t a = 0; a < f.coeff.size(); ++a) {
    for (std::size_t b = 0; b < f.coeff[a].size(); ++b) {
      const double c = f.coeff[a][b];
      if (c == 0.0) continue;
      for (std::size_t k = 0; k <= a; ++k)
        for (std::size_t h = 0; h <= b; ++h)
          table(k, h) += c * binomial(a, k) * power(x0, a - k) * binomial(b, h) * power(y0, b - h);
    }
  }
  return table;
}

double dtm_inverse(const DtmTable& table, double x, double y) {
  const double u = x - table.x0();
  const double v = y - table.y0();
  // Horner in both variables.
  double sum = 0.0;
  for (std::size_t k = table.order_x() + 1; k-- > 0;) {
    double row = 0.0;
    for (std::size_t h = table.order_y() + 1; h-- > 0;) row = row * v + table(k, h);
    sum = sum * u + row;
  }
  return sum;
}

DtmTable dtm_drift_diffusion(std::span<const double> initial, double drift, double diffusion,
                             std::size_t order_x, std::size_t order_t, double x0) {
  if (initial.size() > order_x + 1)
    throw ValidationError("initial series longer than the x truncation order");
  DtmTable table(order_x, order_t, x0, 0.0);
  for (std::size_t k = 0; k < initial.size(); ++k) table(k, 0) = initial[k];
  for (std::size_t h = 0; h < order_t; ++h) {
    for (std::size_t k = 0; k <= order_x; ++k) {
      const double dk = static_cast<double>(k);
      double v = 0.0;
      if (k + 1 <= order_x) v += -drift * (dk + 1.0) * table(k + 1, h);
      if (k + 2 <= order_x) v += diffusion * (dk + 1.0) * (dk + 2.0) * table(k + 2, h);
      table(k, h + 1) = v / static_cast<double>(h + 1);
    }
  }
  return table;
}

}  // namespace nanowire
