// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "beaconsim/runner.hpp"
#include "beaconsim/scenario.hpp"
#include "doctest.h"

using namespace beaconsim;

namespace {

scenario::ResolvedRun resolved_compact(Tick steady = 0,
                                       coupling::Scheme scheme = coupling::Scheme::TrickleGated) {
  auto cfg = scenario::compact_chain_scenario();
  cfg.steady_ticks = steady;
  cfg.scheme.scheme = scheme;
  return scenario::resolve(cfg);
}

}  // namespace

TEST_SUITE("network") {

TEST_CASE("a lone device joins the coordinator at hop one") {
  scenario::RunConfig cfg;
  cfg.nodes.push_back({0, 0, 0, Role::PanCoordinator, 0});
  cfg.nodes.push_back({7, 10, 0, Role::Rfd, 0});
  cfg.radio_range = 30;
  auto rr = scenario::resolve(cfg);
  auto out = runner::run_one(rr, 1);

  REQUIRE(out.result.converged);
  const auto& probe = out.result.nodes.at(7);
  CHECK(probe.hop == 1);
  REQUIRE(probe.parent.has_value());
  CHECK(*probe.parent == 0);
  REQUIRE(probe.assoc_tick.has_value());
  CHECK(*probe.assoc_tick == out.result.convergence_tick);
  CHECK(out.result.consistency_notes.empty());
}

TEST_CASE("the chain builds the expected tree depths") {
  auto rr = resolved_compact();
  auto out = runner::run_one(rr, 3);
  REQUIRE(out.result.converged);
  CHECK(out.result.nodes.at(0).hop == 0);
  CHECK(out.result.nodes.at(1).hop == 1);
  CHECK(*out.result.nodes.at(1).parent == 0);
  CHECK(out.result.nodes.at(2).hop == 2);
  CHECK(*out.result.nodes.at(2).parent == 1);
  for (const auto& [id, rep] : out.result.nodes) {
    if (rep.role != Role::Rfd) continue;
    REQUIRE(rep.parent.has_value());
    CHECK(rep.hop == out.result.nodes.at(*rep.parent).hop + 1);
  }
  CHECK(out.result.consistency_notes.empty());
}

TEST_CASE("identical seeds replay identical runs") {
  auto rr = resolved_compact();
  auto a = runner::run_one(rr, 42);
  auto b = runner::run_one(rr, 42);

  CHECK(a.result.converged == b.result.converged);
  CHECK(a.result.convergence_tick == b.result.convergence_tick);
  REQUIRE(a.result.tx_log.size() == b.result.tx_log.size());
  for (size_t i = 0; i < a.result.tx_log.size(); ++i) {
    const auto& x = a.result.tx_log[i];
    const auto& y = b.result.tx_log[i];
    CHECK(x.sender == y.sender);
    CHECK(x.start == y.start);
    CHECK(x.end == y.end);
    CHECK(x.kind == y.kind);
    CHECK(x.mac_bytes == y.mac_bytes);
  }

  auto c = runner::run_one(rr, 43);
  CHECK((c.result.convergence_tick != a.result.convergence_tick ||
         c.result.tx_log.size() != a.result.tx_log.size()));
}

TEST_CASE("every delivered solicitation is answered by a payload-bearing beacon") {
  // Two extra beacon intervals after convergence so a request landing right
  // at the end still meets its answering beacon.
  auto rr = resolved_compact(2 * 30720);
  auto out = runner::run_one(rr, 5);
  REQUIRE(out.result.converged);
  REQUIRE(!out.result.br_outcomes.empty());
  for (const auto& br : out.result.br_outcomes) {
    CHECK(br.resolved);
    CHECK(br.next_beacon_had_dio);
  }
  bool solicited = std::any_of(
      out.result.dio_departures.begin(), out.result.dio_departures.end(),
      [](const sim::DioDeparture& d) { return d.cause == rpl::ResetCause::BeaconRequest; });
  CHECK(solicited);
}

TEST_CASE("the baseline scheme never solicits and fills every beacon") {
  auto rr = resolved_compact(0, coupling::Scheme::EveryBeacon);
  auto out = runner::run_one(rr, 5);
  REQUIRE(out.result.converged);
  CHECK(out.result.dio_departures.empty());
  CHECK(out.result.br_outcomes.empty());
  int beacons = 0;
  for (const auto& tx : out.result.tx_log) {
    CHECK(tx.kind != mac154::FrameKind::BeaconRequest);
    if (tx.kind == mac154::FrameKind::Beacon) {
      ++beacons;
      CHECK(tx.payload_bytes == 28);
    }
  }
  CHECK(beacons > 0);
}

TEST_CASE("joined devices go silent for the steady window") {
  auto rr = resolved_compact(3 * 30720);
  auto out = runner::run_one(rr, 9);
  REQUIRE(out.result.converged);
  CHECK(out.result.end_tick >= out.result.convergence_tick + 3 * 30720);
  for (const auto& [id, rep] : out.result.nodes) {
    if (rep.role != Role::Rfd) continue;
    CHECK(metrics::overhead_bytes(out.result.tx_log, out.result.convergence_tick,
                                  out.result.end_tick, id) == 0);
  }
}

TEST_CASE("boot jitter spreads deployments per seed yet replays per seed") {
  scenario::RunConfig cfg;
  cfg.nodes.push_back({0, 0, 0, Role::PanCoordinator, 0});
  cfg.nodes.push_back({7, 10, 0, Role::Rfd, 0});
  cfg.radio_range = 30;
  cfg.boot_jitter = 10 * 30720;
  auto rr = scenario::resolve(cfg);

  auto a = runner::run_one(rr, 1);
  auto b = runner::run_one(rr, 1);
  REQUIRE(a.result.converged);
  CHECK(a.result.convergence_tick == b.result.convergence_tick);

  // Across seeds the deployment phase dominates the join instant.
  Tick lo = a.result.convergence_tick, hi = lo;
  for (std::uint64_t seed = 2; seed <= 6; ++seed) {
    auto out = runner::run_one(rr, seed);
    REQUIRE(out.result.converged);
    lo = std::min(lo, out.result.convergence_tick);
    hi = std::max(hi, out.result.convergence_tick);
  }
  CHECK(hi - lo > 30720);
}

TEST_CASE("every transmitted frame honors the size invariants") {
  auto rr = resolved_compact();
  for (std::uint64_t seed : {1ull, 2ull}) {
    auto out = runner::run_one(rr, seed);
    for (const auto& tx : out.result.tx_log) {
      CHECK(tx.mac_bytes <= mac154::kMaxMacFrameBytes);
      CHECK(tx.mac_bytes > 0);
      if (tx.kind == mac154::FrameKind::BeaconRequest)
        CHECK(tx.mac_bytes == mac154::kBeaconRequestBytes);
    }
  }
}

}  // TEST_SUITE
