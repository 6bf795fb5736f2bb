// SPDX-License-Identifier: Apache-2.0
#include <string>
#include <vector>

#include "beaconsim/engine.hpp"
#include "doctest.h"

using namespace beaconsim;

TEST_SUITE("engine") {

TEST_CASE("events fire in time order, ties in insertion order") {
  engine::Engine eng(1);
  std::string order;
  eng.at(20, [&] { order += 'c'; });
  eng.at(10, [&] { order += 'a'; });
  eng.at(10, [&] { order += 'b'; });
  eng.run_until(100);
  CHECK(order == "abc");
  CHECK(eng.now() == 100);
}

TEST_CASE("after schedules relative to the current tick") {
  engine::Engine eng(1);
  Tick seen = -1;
  eng.at(50, [&] { eng.after(7, [&] { seen = eng.now(); }); });
  eng.run_until(1000);
  CHECK(seen == 57);
}

TEST_CASE("scheduling into the past throws") {
  engine::Engine eng(1);
  bool threw = false;
  eng.at(10, [&] {
    try {
      eng.at(9, [] {});
    } catch (const std::exception&) {
      threw = true;
    }
  });
  eng.run_until(20);
  CHECK(threw);
}

TEST_CASE("run_until executes strictly earlier events only") {
  engine::Engine eng(1);
  int fired = 0;
  eng.at(10, [&] { ++fired; });
  eng.at(15, [&] { ++fired; });
  eng.run_until(15);  // the event at 15 must stay queued
  CHECK(fired == 1);
  CHECK(eng.pending() == 1);
  eng.run_until(16);
  CHECK(fired == 2);
}

TEST_CASE("stop halts the loop from inside an event") {
  engine::Engine eng(1);
  int fired = 0;
  eng.at(5, [&] {
    ++fired;
    eng.stop();
  });
  eng.at(6, [&] { ++fired; });
  eng.run_until(100);
  CHECK(fired == 1);
  CHECK(eng.stopped());
}

TEST_CASE("identical seeds give identical draw sequences") {
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
    all_equal = all_equal && (x == y);
    any_diff = any_diff || (x != z);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("bounded draws stay in the half-open range and reach its floor") {
  Rng rng(7);
  bool hit_lo = false, hit_top = false;
  for (int i = 0; i < 4000; ++i) {
    auto v = rng.uniform(-3, 5);
    REQUIRE(v >= -3);
    REQUIRE(v < 5);
    hit_lo = hit_lo || v == -3;
    hit_top = hit_top || v == 4;
  }
  CHECK(hit_lo);
  CHECK(hit_top);
}

TEST_CASE("trace hook sees tick and node") {
  engine::Engine eng(1);
  std::vector<Tick> ticks;
  eng.set_trace([&](Tick t, NodeId, std::string_view, std::string_view) {
    ticks.push_back(t);
  });
  CHECK(eng.tracing());
  eng.at(3, [&] { eng.trace(1, "k", "d"); });
  eng.run_until(10);
  REQUIRE(ticks.size() == 1);
  CHECK(ticks[0] == 3);
}

}  // TEST_SUITE
