// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace beaconsim::metrics {

const std::vector<RadioLedger::Interval> RadioLedger::kEmpty;

void RadioLedger::record_state(NodeId node, RadioState state, Tick from, Tick to) {
  if (to < from) throw std::logic_error("radio interval ends before it starts");
  if (to == from) return;
  auto& track = tracks_[node];
  if (track.open_state) throw std::logic_error("record_state while an interval is open");
  if (!track.closed.empty() && track.closed.back().to > from)
    throw std::logic_error("radio intervals overlap");
  // merge with the previous interval when contiguous and same state
  if (!track.closed.empty() && track.closed.back().to == from &&
      track.closed.back().state == state) {
    track.closed.back().to = to;
    return;
  }
  track.closed.push_back({from, to, state});
}

void RadioLedger::transition(NodeId node, RadioState state, Tick at) {
  auto& track = tracks_[node];
  if (track.open_state) {
    if (at < track.open_since) throw std::logic_error("radio transition goes backwards");
    RadioState prev = *track.open_state;
    if (prev == state) return;  // no change, keep the open interval running
    track.open_state.reset();
    record_state(node, prev, track.open_since, at);
  }
  track.open_state = state;
  track.open_since = at;
}

void RadioLedger::finalize(Tick end) {
  for (auto& [node, track] : tracks_) {
    if (!track.open_state) continue;
    RadioState prev = *track.open_state;
    track.open_state.reset();
    record_state(node, prev, track.open_since, end);
  }
}

bool RadioLedger::rx_covered(NodeId node, Tick from, Tick to) const {
  if (from >= to) return true;
  auto it = tracks_.find(node);
  if (it == tracks_.end()) return false;
  const auto& track = it->second;
  Tick need = from;
  for (const auto& iv : track.closed) {
    if (iv.to <= need) continue;
    if (iv.from > need) return false;  // gap
    if (iv.state != RadioState::Rx) return false;
    need = iv.to;
    if (need >= to) return true;
  }
  if (track.open_state && *track.open_state == RadioState::Rx && track.open_since <= need)
    return true;  // open rx interval extends to the present
  return false;
}

Tick RadioLedger::ticks_in_state(NodeId node, RadioState state, Tick from, Tick to) const {
  auto it = tracks_.find(node);
  if (it == tracks_.end()) return 0;
  Tick total = 0;
  for (const auto& iv : it->second.closed) {
    if (iv.state != state) continue;
    Tick lo = std::max(iv.from, from);
    Tick hi = std::min(iv.to, to);
    if (hi > lo) total += hi - lo;
  }
  const auto& track = it->second;
  if (track.open_state && *track.open_state == state) {
    Tick lo = std::max(track.open_since, from);
    if (to > lo) total += to - lo;
  }
  return total;
}

const std::vector<RadioLedger::Interval>& RadioLedger::intervals(NodeId node) const {
  auto it = tracks_.find(node);
  return it == tracks_.end() ? kEmpty : it->second.closed;
}

long long overhead_bytes(const std::vector<TxRecord>& records, Tick from, Tick to,
                         std::optional<NodeId> sender,
                         std::optional<mac154::FrameKind> kind) {
  long long total = 0;
  for (const auto& rec : records) {
    if (rec.start < from || rec.start >= to) continue;
    if (sender && rec.sender != *sender) continue;
    if (kind && rec.kind != *kind) continue;
    total += rec.mac_bytes;
  }
  return total;
}

ConvergenceReport convergence_time(const std::map<NodeId, Tick>& association_times,
                                   const std::vector<NodeId>& expected_joiners) {
  ConvergenceReport report;
  report.converged = true;
  for (NodeId id : expected_joiners) {
    auto it = association_times.find(id);
    if (it == association_times.end()) {
      report.converged = false;
      report.unassociated.push_back(id);
    } else {
      report.time = std::max(report.time, it->second);
    }
  }
  if (!report.converged) report.time = 0;
  return report;
}

}  // namespace beaconsim::metrics
