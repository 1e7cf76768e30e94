#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "nanowire/dtm.hpp"
#include "nanowire/error.hpp"

using namespace nanowire;

namespace {

Polynomial2 poly(std::vector<std::vector<double>> c) { return Polynomial2{std::move(c)}; }

double evaluate(const Polynomial2& f, double x, double y) {
  double s = 0.0;
  for (std::size_t a = 0; a < f.coeff.size(); ++a)
    for (std::size_t b = 0; b < f.coeff[a].size(); ++b)
      s += f.coeff[a][b] * std::pow(x, double(a)) * std::pow(y, double(b));
  return s;
}

// Test oracle: differentiate the coefficient table k times in x and h times
// in y, evaluate at (x0, y0), divide by k! h!.
double scaled_derivative(const Polynomial2& f, std::size_t k, std::size_t h, double x0, double y0) {
  Polynomial2 g = f;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t a = 0; a < g.coeff.size(); ++a)
      for (std::size_t b = 0; b < g.coeff[a].size(); ++b)
        g.coeff[a][b] = a + 1 < g.coeff.size() && b < g.coeff[a + 1].size()
                            ? double(a + 1) * g.coeff[a + 1][b]
                            : 0.0;
  }
  for (std::size_t i = 0; i < h; ++i)
    for (auto& row : g.coeff)
      for (std::size_t b = 0; b < row.size(); ++b)
        row[b] = b + 1 < row.size() ? double(b + 1) * row[b + 1] : 0.0;
  return evaluate(g, x0, y0) / (std::tgamma(double(k) + 1) * std::tgamma(double(h) + 1));
}

}  // namespace

TEST_CASE("monomial and constant transforms") {
  const auto xy = dtm_transform(poly({{0, 0}, {0, 1}}), 2, 2);
  for (std::size_t k = 0; k <= 2; ++k)
    for (std::size_t h = 0; h <= 2; ++h) CHECK(xy(k, h) == (k == 1 && h == 1 ? 1.0 : 0.0));

  const auto c = dtm_transform(poly({{3.5}}), 1, 1);
  CHECK(c(0, 0) == 3.5);
  CHECK(c(1, 0) == 0.0);

  const auto f = dtm_transform(poly({{0, 1}, {0, 0}, {1, 0}}), 3, 3);  // x^2 + y
  CHECK(f(2, 0) == 1.0);
  CHECK(f(0, 1) == 1.0);
  CHECK(f(1, 0) == 0.0);
  CHECK(f(0, 0) == 0.0);
}

TEST_CASE("degree beyond the truncation order is rejected") {
  CHECK_THROWS_AS(dtm_transform(poly({{0}, {0}, {1}}), 1, 1), ValidationError);
  CHECK_THROWS_AS(dtm_transform(poly({{0, 0, 1}}), 3, 1), ValidationError);
}

TEST_CASE("zero table inverts to zero") {
  const DtmTable zero(4, 4, 0.5, -1.0);
  for (double x : {-3.0, 0.0, 2.0}) CHECK(dtm_inverse(zero, x, 7.0) == 0.0);
}

TEST_CASE("property: transform matches the differentiation oracle and round-trips") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dx = 1 + gen() % 5, dy = 1 + gen() % 4;
    Polynomial2 f;
    f.coeff.assign(dx + 1, std::vector<double>(dy + 1));
    for (auto& row : f.coeff)
      for (auto& v : row) v = u(gen);
    const double x0 = u(gen), y0 = u(gen);
    const auto table = dtm_transform(f, dx + 1, dy, x0, y0);
    for (std::size_t k = 0; k <= dx; ++k)
      for (std::size_t h = 0; h <= dy; ++h)
        CHECK(table(k, h) == doctest::Approx(scaled_derivative(f, k, h, x0, y0)).epsilon(1e-12));
    for (int i = 0; i < 5; ++i) {
      const double x = 2 * u(gen), y = 2 * u(gen);
      CHECK(dtm_inverse(table, x, y) == doctest::Approx(evaluate(f, x, y)).epsilon(1e-11));
    }
  }
}

TEST_CASE("drift-diffusion recurrence is exact on a quadratic seed") {
  // p(x, 0) = x^2 evolves to (x - E t)^2 + 2 D t.
  const double e = 0.7, d = 0.3;
  const std::vector<double> seed{0.0, 0.0, 1.0};
  const auto table = dtm_drift_diffusion(seed, e, d, 2, 3);
  for (double x : {-1.0, 0.5, 2.0})
    for (double t : {0.0, 0.4, 1.5})
      CHECK(dtm_inverse(table, x, t) == doctest::Approx((x - e * t) * (x - e * t) + 2 * d * t));
  CHECK_THROWS_AS(dtm_drift_diffusion(std::vector<double>(5, 1.0), e, d, 3, 2), ValidationError);
}

TEST_CASE("truncated series tracks the Gaussian solution for small t") {
  // Nondimensional units: unit diffusion, unit drift, unit seed variance.
  // The series in t converges for t < s / (2 D) = 0.5; compare at t = 0.1.
  const double e = 1.0, d = 1.0, s = 1.0, t = 0.1;
  const std::size_t order_t = 12, order_x = 40 + 2 * order_t;
  std::vector<double> seed(order_x + 1, 0.0);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s);
  for (std::size_t m = 0; 2 * m <= order_x; ++m)
    seed[2 * m] = norm * std::pow(-1.0 / (2.0 * s), double(m)) / std::tgamma(double(m) + 1);
  const auto table = dtm_drift_diffusion(seed, e, d, order_x, order_t);
  const double var = s + 2 * d * t, mean = e * t;
  for (double z : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double x = mean + z * std::sqrt(var);
    const double exact =
        std::exp(-(x - mean) * (x - mean) / (2 * var)) / std::sqrt(2 * std::numbers::pi * var);
    CHECK(dtm_inverse(table, x, t) == doctest::Approx(exact).epsilon(0.05));
  }
}
