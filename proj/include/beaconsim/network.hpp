// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "beaconsim/coupling.hpp"
#include "beaconsim/engine.hpp"
#include "beaconsim/medium.hpp"
#include "beaconsim/metrics.hpp"
#include "beaconsim/rpl.hpp"
#include "beaconsim/slot_alloc.hpp"
#include "beaconsim/superframe.hpp"
#include "beaconsim/topology.hpp"

namespace beaconsim::sim {

struct RunParams {
  mac154::MacConfig mac;
  mac154::SuperframeConfig sf;
  rpl::RplConfig rpl;  // trickle.imin already resolved
  coupling::SchemeConfig scheme;
  metrics::EnergyModel energy;
  Tick scan_duration = 0;  // resolved window length
  bool until_converged = true;
  Tick fixed_duration = 0;   // used when !until_converged
  Tick steady_ticks = 0;     // extra time after convergence
  Tick max_ticks = 0;        // hard cap; required
  Tick boot_jitter = 0;      // per-seed uniform shift added to every boot
};

/// One delivered beacon request and what the solicited coordinator's next
/// beacon carried.
struct BeaconRequestOutcome {
  NodeId coordinator = 0;
  Tick request_tick = 0;
  bool resolved = false;  // a beacon followed before the run ended
  bool next_beacon_had_dio = false;
};

/// A DIO leaving in a beacon: the Trickle expiry that produced it, the
/// beacon transmission start that carried it, and the cause of the interval
/// the timer was in when it fired.
struct DioDeparture {
  NodeId coordinator = 0;
  Tick fire_tick = 0;
  Tick beacon_tick = 0;
  rpl::ResetCause cause = rpl::ResetCause::Start;
};

struct NodeReport {
  Role role = Role::Rfd;
  int hop = -1;  // tree depth after the run; -1 when never associated
  std::optional<Tick> assoc_tick;
  std::optional<NodeId> parent;
  int scan_count = 0;
};

struct RunResult {
  bool converged = false;
  Tick convergence_tick = 0;  // valid when converged
  Tick end_tick = 0;
  std::map<NodeId, NodeReport> nodes;
  std::vector<DioDeparture> dio_departures;
  std::vector<BeaconRequestOutcome> br_outcomes;
  metrics::RadioLedger radio;
  std::vector<metrics::TxRecord> tx_log;
  struct RxRecord {
    NodeId receiver = 0;
    Tick tick = 0;
    int mac_bytes = 0;
  };
  std::vector<RxRecord> rx_log;  // frames accepted (addressed or broadcast)
  std::vector<std::string> consistency_notes;  // violated internal invariants
};

/// The full protocol state machine: passive scanning anchored on the first
/// heard beacon, DIO solicitation via beacon requests, the sleep/wake plan
/// for payload-less coordinators, the five-frame association exchange,
/// coordinator beaconing with payload hooks, and Trickle plumbing.
class Network {
 public:
  Network(engine::Engine& eng, const engine::Topology& topo, const RunParams& params);
  ~Network();

  /// Schedules every node's boot. Call once, then drive the engine.
  void start();

  /// Closes the books and extracts the result. Call after the engine stops.
  RunResult finish();

 private:
  struct Node;
  struct Impl;
  Impl* impl_;
};

}  // namespace beaconsim::sim
