// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beaconsim/frame.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::metrics {

enum class RadioState { Tx, Rx, Sleep };

inline const char* radio_state_name(RadioState s) {
  switch (s) {
    case RadioState::Tx: return "tx";
    case RadioState::Rx: return "rx";
    case RadioState::Sleep: return "sleep";
  }
  return "?";
}

struct EnergyModel {
  double i_tx = 0.0174;   // amps
  double i_rx = 0.0188;   // amps
  double i_sleep = 0.0;   // amps
  double voltage = 3.0;   // volts

  double current_for(RadioState s) const {
    switch (s) {
      case RadioState::Tx: return i_tx;
      case RadioState::Rx: return i_rx;
      case RadioState::Sleep: return i_sleep;
    }
    return 0.0;
  }
};

/// Energy drawn at a constant current over a span of ticks.
inline double energy_joules(Tick ticks, double amps, double volts) {
  return ticks_to_seconds(ticks) * amps * volts;
}
inline double energy_joules_seconds(double seconds, double amps, double volts) {
  return seconds * amps * volts;
}

/// Per-node record of radio states over the run. Intervals are appended in
/// time order per node and must tile without overlap; any overlap means the
/// accounting upstream is broken, so it is rejected loudly.
class RadioLedger {
 public:
  /// Appends a closed interval [from, to). Zero-length intervals are dropped.
  void record_state(NodeId node, RadioState state, Tick from, Tick to);

  /// Convenience used by the live simulation: closes the currently open
  /// interval at `at` and opens a new one in `state`.
  void transition(NodeId node, RadioState state, Tick at);
  /// Closes all open intervals at the end of the run.
  void finalize(Tick end);

  /// True when `node` was in Rx for every tick of [from, to).
  bool rx_covered(NodeId node, Tick from, Tick to) const;

  /// Ticks spent in `state` within [from, to).
  Tick ticks_in_state(NodeId node, RadioState state, Tick from, Tick to) const;

  double energy_in_state(NodeId node, RadioState state, Tick from, Tick to,
                         const EnergyModel& model) const {
    return energy_joules(ticks_in_state(node, state, from, to), model.current_for(state),
                         model.voltage);
  }

  struct Interval {
    Tick from = 0;
    Tick to = 0;
    RadioState state = RadioState::Sleep;
  };
  const std::vector<Interval>& intervals(NodeId node) const;

 private:
  struct NodeTrack {
    std::vector<Interval> closed;
    std::optional<RadioState> open_state;
    Tick open_since = 0;
  };
  std::map<NodeId, NodeTrack> tracks_;
  static const std::vector<Interval> kEmpty;
};

/// One frame put on air, as the metrics layer sees it.
struct TxRecord {
  NodeId sender = 0;
  Tick start = 0;
  Tick end = 0;
  mac154::FrameKind kind = mac154::FrameKind::Beacon;
  int mac_bytes = 0;
  int payload_bytes = 0;
  bool payload_is_dio = false;
};

/// Sums MAC bytes transmitted with start inside [from, to), optionally for
/// one sender and/or one frame kind.
long long overhead_bytes(const std::vector<TxRecord>& records, Tick from, Tick to,
                         std::optional<NodeId> sender = std::nullopt,
                         std::optional<mac154::FrameKind> kind = std::nullopt);

/// Association completion instants; nodes absent from the map never joined.
struct ConvergenceReport {
  bool converged = false;
  Tick time = 0;  // largest association instant when converged
  std::vector<NodeId> unassociated;
};

ConvergenceReport convergence_time(const std::map<NodeId, Tick>& association_times,
                                   const std::vector<NodeId>& expected_joiners);

}  // namespace beaconsim::metrics
