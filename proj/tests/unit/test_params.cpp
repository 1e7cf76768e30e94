#include "doctest.h"
#include "nanowire/error.hpp"
#include "nanowire/params.hpp"

using namespace nanowire;

TEST_CASE("baseline parameters are valid and describe the 9 um channel") {
  const KineticParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.min_length() == 4);
  // floor(9 um / 11 nm) = 818 steps beyond the 3-monomer core
  CHECK(p.max_length() == 821);
  CHECK(p.total_count() == 1000);
  CHECK(p.initial_concentration() == 1000.0);
}

TEST_CASE("with_max_length lands exactly on the requested length") {
  for (std::int64_t l : {5, 30, 77, 821, 5000}) CHECK(with_max_length(KineticParams{}, l).max_length() == l);
}

TEST_CASE("count interpretation switches which reading of n0 is primary") {
  KineticParams p;
  p.n0 = 1000.0;
  p.count_scale = 4.0;
  CHECK(p.total_count() == 4000);
  CHECK(p.initial_concentration() == 1000.0);
  p.interpretation = CountInterpretation::Count;
  CHECK(p.total_count() == 1000);
  CHECK(p.initial_concentration() == 250.0);
}

TEST_CASE("invariant violations are reported") {
  auto bad = [](auto mutate) {
    KineticParams p;
    mutate(p);
    CHECK_THROWS_AS(p.validate(), ValidationError);
  };
  bad([](KineticParams& p) { p.k_plus = -1.0; });
  bad([](KineticParams& p) { p.k_plus = 0.0; });
  bad([](KineticParams& p) { p.k_minus = -0.1; });
  bad([](KineticParams& p) { p.delta = 0.0; });
  bad([](KineticParams& p) { p.n0 = 0.0; });
  bad([](KineticParams& p) { p.x_l = p.x0; });
  bad([](KineticParams& p) { p.x_l = p.x0 + 0.5 * p.delta; });
  bad([](KineticParams& p) { p.count_scale = 0.0; });
}
