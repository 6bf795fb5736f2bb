// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/metrics.hpp"
#include "doctest.h"

using namespace beaconsim;
using namespace beaconsim::metrics;

TEST_SUITE("metrics") {

TEST_CASE("energy of a constant draw over a known span") {
  // 62500 ticks is exactly one second of symbol time.
  CHECK(energy_joules(62500, 0.0188, 3.0) == doctest::Approx(0.0564));
  CHECK(energy_joules(0, 0.0188, 3.0) == doctest::Approx(0.0));
  EnergyModel m;
  CHECK(m.current_for(RadioState::Tx) == doctest::Approx(0.0174));
  CHECK(m.current_for(RadioState::Sleep) == doctest::Approx(0.0));
}

TEST_CASE("ledger accumulates state time and clips to the query window") {
  RadioLedger led;
  led.record_state(3, RadioState::Rx, 100, 200);
  led.record_state(3, RadioState::Tx, 200, 260);
  led.record_state(3, RadioState::Sleep, 260, 1000);

  CHECK(led.ticks_in_state(3, RadioState::Rx, 0, 2000) == 100);
  CHECK(led.ticks_in_state(3, RadioState::Tx, 0, 2000) == 60);
  // Window cuts through both intervals.
  CHECK(led.ticks_in_state(3, RadioState::Rx, 150, 230) == 50);
  CHECK(led.ticks_in_state(3, RadioState::Tx, 150, 230) == 30);
  // Unknown node holds no time.
  CHECK(led.ticks_in_state(9, RadioState::Rx, 0, 2000) == 0);
}

TEST_CASE("ledger rejects overlapping intervals and drops empty ones") {
  RadioLedger led;
  led.record_state(1, RadioState::Rx, 0, 50);
  CHECK_THROWS(led.record_state(1, RadioState::Tx, 40, 60));  // overlaps [0,50)
  led.record_state(1, RadioState::Tx, 50, 50);                // zero length: ignored
  led.record_state(1, RadioState::Tx, 50, 70);
  CHECK(led.intervals(1).size() == 2);
}

TEST_CASE("transitions open and close intervals in sequence") {
  RadioLedger led;
  led.transition(5, RadioState::Rx, 0);
  led.transition(5, RadioState::Tx, 40);
  led.transition(5, RadioState::Sleep, 100);
  led.finalize(500);

  CHECK(led.ticks_in_state(5, RadioState::Rx, 0, 500) == 40);
  CHECK(led.ticks_in_state(5, RadioState::Tx, 0, 500) == 60);
  CHECK(led.ticks_in_state(5, RadioState::Sleep, 0, 500) == 400);
}

TEST_CASE("rx coverage requires listening for the whole span") {
  RadioLedger led;
  led.record_state(2, RadioState::Rx, 10, 50);
  led.record_state(2, RadioState::Rx, 50, 80);  // contiguous stretches count as covered
  led.record_state(2, RadioState::Sleep, 80, 120);
  led.record_state(2, RadioState::Rx, 120, 200);

  CHECK(led.rx_covered(2, 10, 80));
  CHECK(led.rx_covered(2, 20, 70));
  CHECK(!led.rx_covered(2, 20, 90));   // tail falls into sleep
  CHECK(!led.rx_covered(2, 90, 130));  // head falls into sleep
  CHECK(!led.rx_covered(2, 0, 20));    // starts before any record
}

TEST_CASE("overhead sums bytes by window, sender and kind") {
  std::vector<TxRecord> log{
      {1, 100, 184, mac154::FrameKind::Beacon, 42, 0, false},
      {1, 500, 920, mac154::FrameKind::Beacon, 210, 84, true},
      {2, 600, 616, mac154::FrameKind::BeaconRequest, 8, 0, false},
      {1, 1200, 1284, mac154::FrameKind::DataRequest, 42, 0, false},
  };
  CHECK(overhead_bytes(log, 0, 2000) == 302);
  CHECK(overhead_bytes(log, 0, 600) == 252);  // start == 600 falls outside [0, 600)
  CHECK(overhead_bytes(log, 0, 601) == 260);
  CHECK(overhead_bytes(log, 0, 2000, NodeId{2}) == 8);
  CHECK(overhead_bytes(log, 0, 2000, std::nullopt, mac154::FrameKind::Beacon) == 252);
  CHECK(overhead_bytes(log, 0, 2000, NodeId{1}, mac154::FrameKind::DataRequest) == 42);
}

TEST_CASE("convergence waits for every expected joiner") {
  std::map<NodeId, Tick> assoc{{1, 1000}, {2, 4000}, {3, 2500}};
  auto full = convergence_time(assoc, {1, 2, 3});
  CHECK(full.converged);
  CHECK(full.time == 4000);
  CHECK(full.unassociated.empty());

  auto partial = convergence_time(assoc, {1, 2, 3, 4});
  CHECK(!partial.converged);
  REQUIRE(partial.unassociated.size() == 1);
  CHECK(partial.unassociated[0] == 4);
}

}  // TEST_SUITE
