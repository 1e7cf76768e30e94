#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "nanowire/simd/kernels.hpp"

using namespace nanowire::simd;

namespace {

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)); }

struct Restore {
  Backend saved = active_backend();
  ~Restore() { force_backend(saved); }
};

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(supported(Backend::Scalar));
  CHECK(to_string(Backend::Avx2) == "avx2");
  Restore restore;
  force_backend(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  if (!supported(Backend::Neon)) CHECK_THROWS(force_backend(Backend::Neon));
  if (!supported(Backend::Avx2)) CHECK_THROWS(force_backend(Backend::Avx2));
}

TEST_CASE("kernels reject mismatched spans") {
  std::vector<double> a(4), b(5), out(4);
  CHECK_THROWS_AS(axpby(1.0, a, 1.0, b, out), std::invalid_argument);
  CHECK_THROWS_AS(abs_diff_sum(a, b), std::invalid_argument);
  CHECK_THROWS_AS(tridiag_matvec(a, a, a, b, out), std::invalid_argument);
}

TEST_CASE("scalar reference values") {
  Restore restore;
  force_backend(Backend::Scalar);
  const std::vector<double> lo{9, 1, 1}, d{2, 2, 2}, up{1, 1, 9}, x{1, 2, 3};
  std::vector<double> y(3);
  tridiag_matvec(lo, d, up, x, y);
  CHECK(y == std::vector<double>{4, 8, 8});
  const auto m = weighted_moments(std::vector<double>{1, 1}, std::vector<double>{0, 2},
                                  std::vector<double>{0.5, 0.5});
  CHECK(m.m0 == 1.0);
  CHECK(m.m1 == 1.0);
  CHECK(m.m2 == 2.0);
  CHECK(abs_diff_sum(std::vector<double>{1, -1}, std::vector<double>{0, 1}) == 3.0);
}

TEST_CASE("vector backends agree with the scalar reference") {
  Restore restore;
  std::mt19937_64 gen(1234);
  for (Backend backend : {Backend::Avx2, Backend::Neon}) {
    if (!supported(backend)) continue;
    CAPTURE(to_string(backend));
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 1023u}) {
      CAPTURE(n);
      const auto l2 = random_vector(gen, n), l1 = random_vector(gen, n), d = random_vector(gen, n),
                 u1 = random_vector(gen, n), u2 = random_vector(gen, n), x = random_vector(gen, n),
                 y = random_vector(gen, n);
      std::vector<double> pos(n);
      for (std::size_t i = 0; i < n; ++i) pos[i] = std::fabs(x[i]);

      auto run = [&](Backend b) {
        force_backend(b);
        std::vector<double> tri(n), penta(n), ax(n), dn(n), da(n);
        tridiag_matvec(l1, d, u1, x, tri);
        pentadiag_matvec(l2, l1, d, u1, u2, x, penta);
        axpby(0.3, x, -1.7, y, ax);
        phase_rates(pos, y, 0.979, 0.166, 0.25, dn, da);
        const auto m = weighted_moments(l2, x, y);
        const double s = abs_diff_sum(x, y);
        return std::tuple{tri, penta, ax, dn, da, m, s};
      };
      const auto [t0, p0, a0, dn0, da0, m0, s0] = run(Backend::Scalar);
      const auto [t1, p1, a1, dn1, da1, m1, s1] = run(backend);
      CHECK(bit_equal(t0, t1));
      CHECK(bit_equal(p0, p1));
      CHECK(bit_equal(a0, a1));
      CHECK(bit_equal(dn0, dn1));
      CHECK(bit_equal(da0, da1));
      CHECK(close(m1.m0, m0.m0));
      CHECK(close(m1.m1, m0.m1));
      CHECK(close(m1.m2, m0.m2));
      CHECK(close(s1, s0));
    }
  }
}
