// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/medium.hpp"

#include <string>

namespace beaconsim::mac154 {

namespace {
// Longest possible frame is 2*(overhead + 127) ticks; anything that ended
// this far back can no longer overlap an in-flight frame.
constexpr Tick kHistoryTicks = 400;
}  // namespace

Tick Medium::transmit(const Frame& frame) {
  check_frame(frame);
  Tick start = eng_.now();
  Tick end = start + frame_duration(frame, phy_overhead_bytes_);
  prune(start);
  recent_.push_back(OnAir{frame, start, end});
  tx_log_.push_back(metrics::TxRecord{frame.src, start, end, frame.kind,
                                      frame.mac_bytes(), frame.payload_bytes,
                                      std::holds_alternative<rpl::Dio>(frame.payload)});
  if (eng_.tracing())
    eng_.trace(frame.src, "tx",
               std::string(frame_kind_name(frame.kind)) + " dst=" +
                   std::to_string(frame.dst) + " bytes=" + std::to_string(frame.mac_bytes()));
  // take a copy: recent_ may be pruned before the completion event runs
  OnAir tx = recent_.back();
  eng_.at(end, [this, tx] { complete(tx); });
  return end;
}

bool Medium::channel_busy(NodeId listener) const {
  Tick now = eng_.now();
  for (const auto& tx : recent_) {
    if (tx.start <= now && now < tx.end && tx.frame.src != listener &&
        topo_.in_range(tx.frame.src, listener))
      return true;
  }
  return false;
}

bool Medium::collided_at(NodeId receiver, const OnAir& tx) const {
  for (const auto& other : recent_) {
    if (other.start == tx.start && other.end == tx.end &&
        other.frame.src == tx.frame.src)
      continue;  // the frame under evaluation
    if (other.frame.src == tx.frame.src || other.frame.src == receiver) continue;
    if (other.end <= tx.start || other.start >= tx.end) continue;  // no overlap
    if (topo_.in_range(other.frame.src, receiver)) return true;
  }
  return false;
}

void Medium::complete(const OnAir& tx) {
  for (const auto& node : topo_.nodes()) {
    if (node.id == tx.frame.src) continue;
    if (!topo_.in_range(tx.frame.src, node.id)) continue;
    if (collided_at(node.id, tx)) {
      if (eng_.tracing())
        eng_.trace(node.id, "collision",
                   std::string(frame_kind_name(tx.frame.kind)) + " from " +
                       std::to_string(tx.frame.src));
      continue;
    }
    if (!radio_.rx_covered(node.id, tx.start, tx.end)) continue;  // radio was off
    if (deliver_) deliver_(node.id, tx.frame, tx.start, tx.end);
  }
}

void Medium::prune(Tick now) {
  while (!recent_.empty() && recent_.front().end + kHistoryTicks < now)
    recent_.pop_front();
}

}  // namespace beaconsim::mac154
