// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/trickle.hpp"
#include "doctest.h"

using namespace beaconsim;
using namespace beaconsim::rpl;

namespace {
TrickleParams params(Tick imin, int imax, int k = 10) {
  TrickleParams p;
  p.imin = imin;
  p.imax_doublings = imax;
  p.k = k;
  return p;
}
}  // namespace

TEST_SUITE("trickle") {

TEST_CASE("start opens a minimum interval with t in its upper half") {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    auto st = trickle_start(params(1000, 4), 5000, rng);
    CHECK(st.n == 0);
    CHECK(st.interval_len == 1000);
    CHECK(st.interval_start == 5000);
    REQUIRE(st.t >= 5500);
    REQUIRE(st.t < 6000);
    CHECK(st.interval_cause == ResetCause::Start);
  }
}

TEST_CASE("odd minimum interval rounds the half up") {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    auto st = trickle_start(params(7, 0), 0, rng);
    REQUIRE(st.t >= 4);  // ceil(7/2)
    REQUIRE(st.t < 7);
  }
}

TEST_CASE("expiries double the interval up to the cap") {
  Rng rng(3);
  auto st = trickle_start(params(1000, 3), 0, rng);
  Tick expect_len = 1000;
  for (int i = 0; i < 10; ++i) {
    Tick fired_at = st.t;
    auto fire = trickle_on_expire(st, rng);
    CHECK(fire.emit);  // c never incremented here
    CHECK(st.interval_start == fired_at);  // next interval opens at the fire instant
    expect_len = std::min<Tick>(expect_len * 2, 8000);
    CHECK(st.interval_len == expect_len);
    REQUIRE(st.t >= st.interval_start + (st.interval_len + 1) / 2);
    REQUIRE(st.t < st.interval_start + st.interval_len);
  }
  CHECK(st.n == 3);  // saturated
}

TEST_CASE("expiry reports the cause of the interval that elapsed") {
  Rng rng(4);
  auto st = trickle_start(params(1000, 4), 0, rng);
  trickle_reset(st, st.t, ResetCause::BeaconRequest, rng);
  auto fire = trickle_on_expire(st, rng);
  CHECK(fire.fired_cause == ResetCause::BeaconRequest);
  // the next interval is a natural continuation
  auto fire2 = trickle_on_expire(st, rng);
  CHECK(fire2.fired_cause == ResetCause::Natural);
}

TEST_CASE("a full consistency counter suppresses the emission") {
  Rng rng(5);
  auto st = trickle_start(params(1000, 4, 2), 0, rng);
  st.c = 2;  // k consistent messages heard
  auto fire = trickle_on_expire(st, rng);
  CHECK_FALSE(fire.emit);
  CHECK(st.c == 0);  // counter clears with the new interval
}

TEST_CASE("reset collapses to the minimum interval and bumps the generation") {
  Rng rng(6);
  auto st = trickle_start(params(1000, 4), 0, rng);
  for (int i = 0; i < 3; ++i) trickle_on_expire(st, rng);
  REQUIRE(st.interval_len > 1000);
  auto gen = st.generation;
  trickle_reset(st, 9000, ResetCause::Inconsistency, rng);
  CHECK(st.n == 0);
  CHECK(st.interval_len == 1000);
  CHECK(st.interval_start == 9000);
  CHECK(st.interval_cause == ResetCause::Inconsistency);
  CHECK(st.generation > gen);
  REQUIRE(st.t >= 9500);
  REQUIRE(st.t < 10000);
}

TEST_CASE("repeated resets in one tick are harmless, last cause wins") {
  Rng rng(7);
  auto st = trickle_start(params(1000, 4), 0, rng);
  trickle_reset(st, 400, ResetCause::Dis, rng);
  trickle_reset(st, 400, ResetCause::BeaconRequest, rng);
  CHECK(st.interval_start == 400);
  CHECK(st.interval_cause == ResetCause::BeaconRequest);
  REQUIRE(st.t >= 900);
  REQUIRE(st.t < 1400);
}

TEST_CASE("firing position is uniform over the upper half") {
  Rng rng(8);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    auto st = trickle_start(params(10000, 0), 0, rng);
    sum += static_cast<double>(st.t);
  }
  // mean of uniform [5000, 10000) is 7500
  CHECK(sum / n == doctest::Approx(7500).epsilon(0.01));
}

}  // TEST_SUITE
