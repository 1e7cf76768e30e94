#include <cmath>
#include <random>

#include "doctest.h"
#include "nanowire/error.hpp"
#include "nanowire/stability.hpp"

using namespace nanowire;

TEST_CASE("nullcline") {
  const KineticParams p;
  CHECK(nullcline(0.0, p) == 0.0);
  CHECK(nullcline(4.0, p) == doctest::Approx(0.582341439882736382).epsilon(1e-15));
  CHECK_THROWS_AS(nullcline(-1.0, p), ValidationError);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(gen);
    const PhasePoint on{nullcline(a, p), a};
    CHECK(std::fabs(balance_rhs(on, p).dn_dt) < 1e-12);
    CHECK(nullcline_distance(on, p) == 0.0);
  }
}

TEST_CASE("jacobian and eigenvalues") {
  const KineticParams p;
  const auto j = jacobian(1000.0, p);
  CHECK(j[0][0] == doctest::Approx(-3916.0).epsilon(1e-15));
  CHECK(j[1][0] == -j[0][0]);
  CHECK(j[0][1] == 0.0);
  CHECK(j[1][1] == 0.0);
  const auto zero = eigenvalues(jacobian(0.0, p));
  CHECK(zero.lambda1 == 0.0);
  CHECK(zero.lambda2 == 0.0);
  CHECK(zero.classification == StabilityClass::Degenerate);

  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(1e-3, 1e4);
  for (int i = 0; i < 100; ++i) {
    const double n = u(gen);
    const auto ev = eigenvalues(jacobian(n, p));
    CHECK(ev.lambda1 == std::complex<double>(0.0, 0.0));
    CHECK(ev.lambda2 == std::complex<double>(-4.0 * p.k_plus * n, 0.0));
    CHECK(ev.classification == StabilityClass::MarginallyStable);
  }
  CHECK(to_string(StabilityClass::MarginallyStable) == "stable, not asymptotically");

  const auto rot = eigenvalues({{{-1.0, -2.0}, {2.0, -1.0}}});
  CHECK(rot.lambda1 == std::complex<double>(-1.0, 2.0));
  CHECK(rot.classification == StabilityClass::AsymptoticallyStable);
  CHECK(eigenvalues({{{1.0, 0.0}, {0.0, -1.0}}}).classification == StabilityClass::Unstable);
}

TEST_CASE("property: eigenvalues solve the characteristic polynomial") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const Matrix2 m{{{u(gen), u(gen)}, {u(gen), u(gen)}}};
    const auto ev = eigenvalues(m);
    for (auto l : {ev.lambda1, ev.lambda2}) {
      const auto r = (m[0][0] - l) * (m[1][1] - l) - m[0][1] * m[1][0];
      CHECK(std::abs(r) < 1e-10 * (1.0 + std::norm(l)));
    }
    CHECK(ev.lambda1.real() >= ev.lambda2.real());
  }
}

TEST_CASE("stability index") {
  CHECK(stability_index({1.0, 1.0, 1.0}) == 1.0);
  CHECK(stability_index({20.0, 3.0, 2.0}) == 30.0);
  CHECK_THROWS_AS(stability_index({1.0, 1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(stability_index({-1.0, 1.0, 1.0}), ValidationError);
}

TEST_CASE("balance-form portrait converges onto the nullcline") {
  const KineticParams p;
  const auto portrait = phase_field(default_phase_grid(p), p);
  CHECK(portrait.form == FieldForm::Balance);
  CHECK(portrait.field.size() == 21 * 21);
  CHECK(portrait.nullcline_curve.size() == 200);
  REQUIRE(portrait.trajectories.size() == 5);
  for (const auto& arrow : portrait.field) {
    CHECK(arrow.dn_dt == -arrow.da_dt);
    CHECK(arrow.dn_dt == doctest::Approx(balance_rhs(arrow.at, p).dn_dt).epsilon(1e-14));
  }
  for (const auto& pt : portrait.nullcline_curve) CHECK(nullcline_distance(pt, p) < 1e-12);
  for (const auto& tr : portrait.trajectories) {
    CHECK(tr.final_distance < 1e-3 * p.n0);
    CHECK(tr.states.back().t == doctest::Approx(10.0));
    const auto& last = tr.states.back();
    CHECK(last.n + last.a == doctest::Approx(tr.start.n + tr.start.a).epsilon(1e-9));
  }
}

TEST_CASE("rate-law portrait and custom starts") {
  const KineticParams p;
  PhaseOptions opt;
  opt.form = FieldForm::RateLaw;
  opt.starts = {{500.0, 100.0}};
  opt.t_end = 20.0;
  const auto portrait = phase_field(default_phase_grid(p), p, opt);
  REQUIRE(portrait.trajectories.size() == 1);
  // The rate law relaxes to n = K, not onto the nullcline curve.
  CHECK(portrait.trajectories[0].states.back().n ==
        doctest::Approx(critical_concentration(p)).epsilon(1e-6));
  CHECK(to_string(FieldForm::RateLaw) == "rate_law");
  const auto starts = default_phase_starts(p);
  REQUIRE(starts.size() == 5);
  CHECK(starts[4].n == doctest::Approx(1000.0));
}
