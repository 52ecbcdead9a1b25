#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "uavplan/computation.hpp"

using namespace uavplan;
using Catch::Approx;

TEST_CASE("redundancy elimination is linear until the cap") {
  ComputeParams cp;
  const double L = 5e7;
  // 1 GHz / 30 cycles per bit = 33.3 Mbit/s of elimination
  REQUIRE(eliminated_bits(cp, L, 0.0) == 0.0);
  REQUIRE(eliminated_bits(cp, L, 0.3) == Approx(1e9 * 0.3 / 30.0).epsilon(1e-15));
  // cap: at most half the packet, no matter how long we preprocess
  REQUIRE(eliminated_bits(cp, L, 60.0) == 0.5 * L);
  REQUIRE(eliminated_bits(cp, L, 1e6) == 0.5 * L);

  double prev = -1.0;
  for (double t = 0.0; t <= 3.0; t += 0.05) {
    const double e = eliminated_bits(cp, L, t);
    REQUIRE(e >= prev);
    REQUIRE(e <= cp.max_elimination_fraction * L);
    prev = e;
  }
}

TEST_CASE("residual and eliminated bits add up exactly") {
  ComputeParams cp;
  for (double L : {2e7, 3.7e7, 5e7, 1.23e8, 2e8}) {
    for (double t = 0.0; t <= 5.0; t += 0.1) {
      const double e = eliminated_bits(cp, L, t);
      const double r = residual_bits(cp, L, t);
      REQUIRE(r + e == L);
      REQUIRE(r >= 0.0);
    }
  }
}

TEST_CASE("gap coefficient decays from the initial gap toward 1") {
  ComputeParams cp;
  REQUIRE(gap_coefficient(cp, 0.0) == cp.initial_gap);
  double prev = gap_coefficient(cp, 0.0);
  for (double t = 0.1; t <= 5.0; t += 0.1) {
    const double g = gap_coefficient(cp, t);
    REQUIRE(g < prev);
    REQUIRE(g >= 1.0);
    REQUIRE(g <= cp.initial_gap);
    prev = g;
  }
  // e-folding after c0 cycles: 1 + (gamma0 - 1)/e
  REQUIRE(gap_coefficient(cp, 0.5) == Approx(1.0 + 2.0 * std::exp(-1.0)).epsilon(1e-14));
  // long runs converge to the capacity gap of 1 within double precision
  REQUIRE(gap_coefficient(cp, 100.0) == 1.0);
}

TEST_CASE("compute power and energy") {
  ComputeParams cp;
  REQUIRE(compute_power_w(cp) == Approx(0.1).epsilon(1e-12));  // kappa f^3
  REQUIRE(computation_energy_j(cp, 0.0) == 0.0);
  REQUIRE(computation_energy_j(cp, 4.0) == Approx(0.4).epsilon(1e-12));
  REQUIRE(computation_energy_j(cp, 3.0) == Approx(3.0 * compute_power_w(cp)).epsilon(1e-15));
}

TEST_CASE("computation input validation") {
  ComputeParams cp;
  REQUIRE_THROWS_AS(eliminated_bits(cp, -1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(eliminated_bits(cp, 1e7, -0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(gap_coefficient(cp, -1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(computation_energy_j(cp, -1.0), std::invalid_argument);
  cp.max_elimination_fraction = 1.2;
  REQUIRE_THROWS_AS(cp.validate(), std::invalid_argument);
  cp.max_elimination_fraction = 0.5;
  cp.initial_gap = 0.9;
  REQUIRE_THROWS_AS(cp.validate(), std::invalid_argument);
}
