#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "nanowire/banded.hpp"
#include "nanowire/error.hpp"
#include "../oracles/quadrature.hpp"

using namespace nanowire;

TEST_CASE("tridiagonal solve matches dense elimination") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 5u, 40u}) {
    std::vector<double> lo(n), d(n), up(n), b(n);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = u(gen);
      up[i] = u(gen);
      d[i] = 3.0 + u(gen);
      b[i] = u(gen);
      dense[i][i] = d[i];
      if (i > 0) dense[i][i - 1] = lo[i];
      if (i + 1 < n) dense[i][i + 1] = up[i];
    }
    const auto ref = oracle::dense_solve(dense, b);
    std::vector<double> x = b, scratch(n);
    solve_tridiagonal(lo, d, up, x, scratch);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("singular tridiagonal pivot is reported") {
  std::vector<double> lo{0, 1}, d{0, 1}, up{1, 0}, b{1, 1}, s(2);
  CHECK_THROWS_AS(solve_tridiagonal(lo, d, up, b, s), SolverError);
}

TEST_CASE("pentadiagonal LU matches dense elimination") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {1u, 2u, 3u, 6u, 50u}) {
    std::vector<double> l2(n), l1(n), d(n), u1(n), u2(n), b(n);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      l2[i] = u(gen);
      l1[i] = u(gen);
      u1[i] = u(gen);
      u2[i] = u(gen);
      d[i] = 5.0 + u(gen);
      b[i] = u(gen);
      dense[i][i] = d[i];
      if (i >= 1) dense[i][i - 1] = l1[i];
      if (i >= 2) dense[i][i - 2] = l2[i];
      if (i + 1 < n) dense[i][i + 1] = u1[i];
      if (i + 2 < n) dense[i][i + 2] = u2[i];
    }
    const auto ref = oracle::dense_solve(dense, b);
    const PentadiagonalLu lu(l2, l1, d, u1, u2);
    std::vector<double> x = b;
    lu.solve(x);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    // Factors are reusable.
    std::vector<double> x2 = b;
    lu.solve(x2);
    CHECK(x2 == x);
  }
}
