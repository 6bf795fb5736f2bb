// SPDX-License-Identifier: Apache-2.0
#include <numeric>

#include "beaconsim/analysis.hpp"
#include "doctest.h"

using namespace beaconsim;
using namespace beaconsim::analysis;

TEST_SUITE("analysis") {

TEST_CASE("stationary occupancy follows the truncated geometric law") {
  auto p = stationary_interval_probs(0.5, 4);
  REQUIRE(p.size() == 5);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.25));
  CHECK(p[2] == doctest::Approx(0.125));
  CHECK(p[3] == doctest::Approx(0.0625));
  CHECK(p[4] == doctest::Approx(0.0625));  // all remaining mass at the cap
}

TEST_CASE("stationary occupancy at the boundaries of p") {
  auto never = stationary_interval_probs(0.0, 3);
  REQUIRE(never.size() == 4);
  CHECK(never[0] == doctest::Approx(0.0));
  CHECK(never[3] == doctest::Approx(1.0));  // no resets: the chain pins at the cap

  auto always = stationary_interval_probs(1.0, 3);
  CHECK(always[0] == doctest::Approx(1.0));
  CHECK(always[1] == doctest::Approx(0.0));
}

TEST_CASE("stationary occupancy sums to one") {
  for (double p : {0.05, 0.3, 0.77}) {
    auto probs = stationary_interval_probs(p, 6);
    double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    CHECK(total == doctest::Approx(1.0));
  }
  CHECK_THROWS(stationary_interval_probs(-0.1, 4));
  CHECK_THROWS(stationary_interval_probs(1.1, 4));
}

TEST_CASE("distance to the next beacon of a periodic schedule") {
  CHECK(next_beacon_delay(0, 30720) == 30720);  // on the instant: wait a full period
  CHECK(next_beacon_delay(1, 30720) == 30719);
  CHECK(next_beacon_delay(30720, 30720) == 30720);
  CHECK(next_beacon_delay(30725, 30720) == 30715);
}

TEST_CASE("band-averaged delay on a tiny hand case") {
  // x in {2, 3}, period 10: delays 8 and 7
  CHECK(expected_delay_in_band(2, 4, 10) == doctest::Approx(7.5));
}

TEST_CASE("closed-form delay at the minimum interval") {
  CHECK(expected_delay_at_min_interval(15360, 30720) == doctest::Approx(19200));
  CHECK(expected_delay_at_min_interval(26880, 30720) == doctest::Approx(10560));
}

TEST_CASE("stationary-weighted delay reduces to the reset case at p=1") {
  // The exact integer-offset mean sits half a tick above the continuous
  // closed form: offsets in [I/2, I) average 0.75 I - 0.5.
  double a = expected_delay_stationary(15360, 8, 1.0, 30720);
  CHECK(a == doctest::Approx(expected_delay_at_min_interval(15360, 30720) + 0.5));
}

TEST_CASE("direct sampling agrees with the closed form in the reset regime") {
  Rng rng(11);
  auto mc = monte_carlo_delay(rng, 15360, 8, 1.0, 30720, 5000);
  CHECK(mc.mean_delay ==
        doctest::Approx(expected_delay_at_min_interval(15360, 30720)).epsilon(0.03));
  CHECK(mc.mean_interval_index == doctest::Approx(0.0));
}

TEST_CASE("direct sampling reproduces the stationary occupancy") {
  Rng rng(12);
  auto mc = monte_carlo_delay(rng, 3840, 4, 0.5, 30720, 40000);
  auto probs = stationary_interval_probs(0.5, 4);
  REQUIRE(mc.state_freq.size() == probs.size());
  for (size_t i = 0; i < probs.size(); ++i)
    CHECK(mc.state_freq[i] == doctest::Approx(probs[i]).epsilon(0.05).scale(1.0));
}

TEST_CASE("direct sampling matches the stationary-weighted delay") {
  Rng rng(13);
  double analytic = expected_delay_stationary(26880, 4, 0.5, 30720);
  auto mc = monte_carlo_delay(rng, 26880, 4, 0.5, 30720, 60000);
  CHECK(mc.mean_delay == doctest::Approx(analytic).epsilon(0.03));
}

}  // TEST_SUITE
