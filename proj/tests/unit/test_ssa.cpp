#include <cmath>

#include "doctest.h"
#include "nanowire/error.hpp"
#include "nanowire/ssa.hpp"

using namespace nanowire;

TEST_CASE("propensities") {
  KineticParams p;
  CHECK(propensity_polymerization(1000, p) == doctest::Approx(489010.5).epsilon(1e-15));
  CHECK(propensity_polymerization(1, p) == 0.0);
  CHECK(propensity_polymerization(0, p) == 0.0);
  CHECK(propensity_depolymerization({10, 4, 0.0}, p) == 0.0);
  CHECK(propensity_depolymerization({10, 5, 0.0}, p) == 0.166);
  p.propensity = PropensityModel::Linear;
  CHECK(propensity_polymerization(1000, p) == doctest::Approx(979.0));
  CHECK(propensity_polymerization(1, p) == doctest::Approx(0.979));
  CHECK(propensity_polymerization(0, p) == 0.0);
}

TEST_CASE("ssa_step terminal states") {
  const KineticParams p;
  CounterRng rng(1);
  const SystemState at_receiver{5, p.max_length(), 2.0};
  const auto r = ssa_step(at_receiver, p, rng);
  CHECK(r.event == Event::ReceiverReached);
  CHECK(r.state == at_receiver);

  const SystemState stuck{1, 4, 3.0};  // no pair to bind, at the floor
  const auto q = ssa_step(stuck, p, rng);
  CHECK(q.event == Event::Quiescent);
  CHECK(q.state == stuck);
}

TEST_CASE("irreversible kinetics only polymerize") {
  KineticParams p;
  p.k_minus = 0.0;
  p.n0 = 40;
  CounterRng rng(9);
  SystemState s = initial_state(p);
  for (int i = 0; i < 30; ++i) {
    const auto r = ssa_step(s, p, rng);
    REQUIRE(r.event == Event::Polymerization);
    CHECK(r.state.t > s.t);
    s = r.state;
  }
}

TEST_CASE("waiting times are exponential with mean 1/a0") {
  KineticParams p;
  p.n0 = 20;
  const SystemState s{20, 10, 0.0};
  const double a0 = propensity_polymerization(20, p) + propensity_depolymerization(s, p);
  CounterRng rng(42);
  double sum = 0.0;
  int poly = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto r = ssa_step(s, p, rng);
    sum += r.state.t;
    poly += r.event == Event::Polymerization;
  }
  // SE of the mean is 1/(a0 sqrt(draws)) ~ 0.32 %.
  CHECK(sum / draws == doctest::Approx(1.0 / a0).epsilon(0.015));
  const double share = propensity_polymerization(20, p) / a0;
  CHECK(poly / double(draws) == doctest::Approx(share).epsilon(0.01));
}

TEST_CASE("trajectory invariants") {
  KineticParams p;
  p.n0 = 60;
  p = with_max_length(p, 40);
  const SystemState start = initial_state(p);
  const auto traj = simulate_trajectory(p, start, 1e3, 77);
  CHECK(traj.rng_seed == 77);
  CHECK(traj.events.front() == start);
  CHECK(traj.termination == Termination::ReceiverReached);
  CHECK(traj.events.back().length == 40);
  CHECK(traj.polymerizations - traj.depolymerizations == 40 - 4);
  CHECK(traj.events.size() == static_cast<std::size_t>(traj.polymerizations + traj.depolymerizations + 1));
  for (std::size_t i = 1; i < traj.events.size(); ++i) {
    const auto& e = traj.events[i];
    CHECK(e.n_free + e.length == start.n_free + start.length);
    CHECK(e.length >= p.min_length());
    CHECK(e.t > traj.events[i - 1].t);
  }

  const auto again = simulate_trajectory(p, start, 1e3, 77);
  CHECK(again.events == traj.events);
  const auto other = simulate_trajectory(p, start, 1e3, 78);
  CHECK(other.events != traj.events);

  const auto none = simulate_trajectory(p, start, 0.0, 5);
  CHECK(none.events.size() == 1);
  CHECK(none.termination == Termination::TimeLimit);
}

TEST_CASE("ensemble edge cases") {
  KineticParams p;
  p.n0 = 50;
  p = with_max_length(p, 30);
  const auto one = run_ensemble(p, 1, 0.0, 3, {.samples = 1});
  REQUIRE(one.times.size() == 1);
  CHECK(one.length_mean[0] == 4.0);
  CHECK(one.length_var[0] == 0.0);
  CHECK(one.n_free_mean[0] == 50.0);
  CHECK(one.n_free_var[0] == 0.0);

  CHECK_THROWS_AS(run_ensemble(p, 0, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(run_ensemble(p, 5, -1.0, 3), ValidationError);
  EnsembleOptions unsorted;
  unsorted.sample_times = {0.2, 0.1};
  CHECK_THROWS_AS(run_ensemble(p, 5, 1.0, 3, unsorted), ValidationError);
  EnsembleOptions outside;
  outside.initial_length = 31;
  CHECK_THROWS_AS(run_ensemble(p, 5, 1.0, 3, outside), ValidationError);
}

TEST_CASE("ensemble is reproducible and independent of thread count") {
  KineticParams p;
  p.n0 = 50;
  p = with_max_length(p, 30);
  EnsembleOptions opt;
  opt.samples = 11;
  opt.histograms = true;
  opt.threads = 1;
  const auto a = run_ensemble(p, 500, 0.05, 2024, opt);
  opt.threads = 3;
  const auto b = run_ensemble(p, 500, 0.05, 2024, opt);
  opt.threads = 7;
  const auto c = run_ensemble(p, 500, 0.05, 2024, opt);
  CHECK(a.length_mean == b.length_mean);
  CHECK(a.length_var == b.length_var);
  CHECK(a.n_free_var == c.n_free_var);
  CHECK(a.length_histogram == c.length_histogram);
  CHECK(a.polymerizations == c.polymerizations);

  const auto d = run_ensemble(p, 500, 0.05, 2025, opt);
  CHECK(d.length_mean != a.length_mean);

  for (std::size_t k = 0; k < a.times.size(); ++k) {
    CHECK(a.length_mean[k] + a.n_free_mean[k] == doctest::Approx(54.0));
    CHECK(a.length_var[k] == doctest::Approx(a.n_free_var[k]));
    double mass = 0.0;
    for (double v : a.length_distribution(k)) mass += v;
    CHECK(mass == doctest::Approx(1.0));
  }
}

TEST_CASE("strong polymerization grows the filament") {
  KineticParams p;
  p.n0 = 200;
  p.propensity = PropensityModel::Linear;
  p = with_max_length(p, 500);
  const auto s = run_ensemble(p, 200, 0.5, 11, {.samples = 6});
  for (std::size_t k = 1; k < s.times.size(); ++k) CHECK(s.length_mean[k] > s.length_mean[k - 1]);
}
