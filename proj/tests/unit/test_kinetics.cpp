#include <cmath>
#include <random>

#include "doctest.h"
#include "nanowire/error.hpp"
#include "nanowire/kinetics.hpp"
#include "../oracles/quadrature.hpp"
#include "../oracles/riccati.hpp"

using namespace nanowire;

TEST_CASE("rate law right-hand side") {
  const KineticParams p;
  const auto r = ode_rhs({0.0, 1.0, 0.0}, p);
  CHECK(r.dn_dt == doctest::Approx(-1.792).epsilon(1e-15));
  CHECK(r.da_dt == -r.dn_dt);

  KineticParams q;
  q.k_plus = 1.0;
  q.k_minus = 0.0;
  CHECK(ode_rhs({0.0, 2.0, 0.0}, q).dn_dt == -8.0);
}

TEST_CASE("critical concentration") {
  const KineticParams p;
  CHECK(critical_concentration(p) == doctest::Approx(0.291170719941368191).epsilon(1e-14));
  CHECK(std::fabs(ode_rhs({0.0, critical_concentration(p), 0.0}, p).dn_dt) < 1e-15);

  KineticParams q;
  q.k_plus = 1.0;
  q.k_minus = 1.0;
  CHECK(critical_concentration(q) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  q.k_minus = 0.0;
  CHECK(critical_concentration(q) == 0.0);
  q.k_plus = 0.0;
  CHECK_THROWS_AS(critical_concentration(q), ValidationError);
}

TEST_CASE("exponential relaxation closed form") {
  const KineticParams p;
  const double k = critical_concentration(p);
  CHECK(analytic_concentration(0.0, p) == 1000.0);
  CHECK(analytic_concentration(1e6, p) == doctest::Approx(k).epsilon(1e-15));
  // (1000 - K) exp(-1.958) + K evaluated independently by quadrature of
  // its own derivative from the known endpoint at t = 0.
  const long double kk = 0.291170719941368191L;
  const long double integral = oracle::simpson(
      [&](long double s) { return -1.958L * (1000.0L - kk) * std::exp(-1.958L * s); }, 0.0L, 1.0L,
      2000);
  CHECK(analytic_concentration(1.0, p) ==
        doctest::Approx(static_cast<double>(1000.0L + integral)).epsilon(1e-12));
  CHECK(analytic_concentration(1.0, p) == doctest::Approx(141.390494429968016).epsilon(1e-14));
  CHECK_THROWS_AS(analytic_concentration(-1.0, p), ValidationError);
}

TEST_CASE("exact Riccati solution matches frozen high-precision values") {
  const KineticParams p;
  CHECK(exact_concentration(0.0, p) == 1000.0);
  CHECK(exact_concentration(0.01, p) == doctest::Approx(48.5914464427426003).epsilon(1e-13));
  CHECK(exact_concentration(0.5, p) == doctest::Approx(1.04795391263495951).epsilon(1e-13));
  CHECK(exact_concentration(2.0, p) == doctest::Approx(0.357445525658155382).epsilon(1e-13));

  KineticParams below = p;
  below.n0 = 0.1;
  for (double t : {0.0, 0.3, 1.0, 5.0})
    CHECK(exact_concentration(t, below) ==
          doctest::Approx(static_cast<double>(oracle::riccati(t, 0.979L, 0.166L, 0.1L)))
              .epsilon(1e-13));
  KineticParams irreversible = p;
  irreversible.k_minus = 0.0;
  CHECK(exact_concentration(1.0, irreversible) == doctest::Approx(1000.0 / (1.0 + 1958.0)));
}

TEST_CASE("integrate_ode conserves mass and approaches the fixed point") {
  const KineticParams p;
  const auto states = integrate_ode(p, 10.0);
  REQUIRE(states.size() == 10001);
  CHECK(states.front().t == 0.0);
  CHECK(states.back().t == 10.0);
  const double k = critical_concentration(p);
  for (std::size_t i = 0; i < states.size(); ++i) {
    CHECK(std::fabs(states[i].n + states[i].a - 1000.0) <= 1e-9 * 1000.0);
    CHECK(states[i].n >= 0.0);
    if (i > 0) CHECK(states[i].n <= states[i - 1].n);
  }
  CHECK(states.back().n == doctest::Approx(k).epsilon(1e-4));
  CHECK(states.back().n ==
        doctest::Approx(static_cast<double>(oracle::riccati(10.0L, 0.979L, 0.166L, 1000.0L)))
            .epsilon(1e-8));
}

TEST_CASE("RK4 tracks the exact solution") {
  const KineticParams p;
  auto worst_error = [&](double dt, double from) {
    double worst = 0.0;
    for (const auto& s : integrate_ode(p, 2.0, {dt, 16})) {
      if (s.t < from) continue;
      const double ref = static_cast<double>(oracle::riccati(s.t, 0.979L, 0.166L, 1000.0L));
      worst = std::max(worst, std::fabs(s.n - ref) / ref);
    }
    return worst;
  };
  // The default step resolves the first millisecond (rate 4 k+ n0 ~ 3900/s)
  // only coarsely; the error decays with the transient.
  CHECK(worst_error(1e-3, 0.0) < 0.02);
  CHECK(worst_error(1e-3, 0.5) < 1e-4);
  CHECK(worst_error(1e-4, 0.0) < 1e-5);

  // Fourth-order convergence on a mild problem.
  KineticParams mild = p;
  mild.n0 = 2.0;
  auto err = [&](double dt) {
    const auto s = integrate_ode(mild, 1.0, {dt, 0});
    return std::fabs(s.back().n -
                     static_cast<double>(oracle::riccati(1.0L, 0.979L, 0.166L, 2.0L)));
  };
  const double order = std::log2(err(0.02) / err(0.01));
  CHECK(order > 3.8);
  CHECK(order < 4.3);
}

TEST_CASE("edge cases of the integrator") {
  const KineticParams p;
  const auto single = integrate_ode(p, 0.0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].n == 1000.0);
  CHECK(single[0].a == 0.0);

  // Without step splitting the baseline first step overshoots below zero.
  CHECK_THROWS_AS(integrate_ode(p, 1.0, {1e-3, 0}), SolverError);

  // A trailing partial step lands exactly on t_end.
  const auto partial = integrate_ode(p, 0.0105);
  CHECK(partial.back().t == 0.0105);
  CHECK(partial.size() == 12);

  KineticParams below = p;
  below.n0 = 0.1;
  const auto up = integrate_ode(below, 5.0);
  CHECK(up.back().n ==
        doctest::Approx(static_cast<double>(oracle::riccati(5.0L, 0.979L, 0.166L, 0.1L)))
            .epsilon(1e-9));
  CHECK(up.back().a < 0.0);  // net depolymerization from an empty start
  CHECK_THROWS_AS(integrate_ode(p, -1.0), ValidationError);
}

TEST_CASE("property: rates are antisymmetric and vanish on n = K") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 2000.0);
  const KineticParams p;
  for (int i = 0; i < 1000; ++i) {
    const DeterministicState s{0.0, u(gen), u(gen)};
    const auto r = ode_rhs(s, p);
    CHECK(r.dn_dt + r.da_dt == 0.0);
    CHECK((r.dn_dt < 0.0) == (s.n > critical_concentration(p)));
  }
}
