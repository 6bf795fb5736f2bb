// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>
#include <functional>
#include <vector>

#include "beaconsim/engine.hpp"
#include "beaconsim/frame.hpp"
#include "beaconsim/metrics.hpp"
#include "beaconsim/topology.hpp"

namespace beaconsim::mac154 {

/// Shared radio channel. A transmission occupies the air for its frame
/// duration; completion is evaluated per potential receiver:
///   collided   - another frame from a third node in the receiver's range
///                overlapped it (hidden terminals included),
///   missed     - the receiver's radio was not in rx for the whole frame,
///   delivered  - otherwise.
/// Collision wins over missed, missed over delivered.
class Medium {
 public:
  Medium(engine::Engine& eng, const engine::Topology& topo,
         metrics::RadioLedger& radio, int phy_overhead_bytes)
      : eng_(eng), topo_(topo), radio_(radio), phy_overhead_bytes_(phy_overhead_bytes) {}

  using DeliveryHandler =
      std::function<void(NodeId receiver, const Frame&, Tick start, Tick end)>;
  void set_delivery_handler(DeliveryHandler h) { deliver_ = std::move(h); }

  /// Puts `frame` on the air starting now. Returns the end tick. The caller
  /// owns the sender's radio state; this only models propagation.
  Tick transmit(const Frame& frame);

  /// CCA result: an in-flight transmission from a node in `listener`'s range
  /// (other than `listener` itself) makes the channel busy.
  bool channel_busy(NodeId listener) const;

  const std::vector<metrics::TxRecord>& tx_log() const { return tx_log_; }

 private:
  struct OnAir {
    Frame frame;
    Tick start = 0;
    Tick end = 0;
  };

  void complete(const OnAir& tx);
  bool collided_at(NodeId receiver, const OnAir& tx) const;
  void prune(Tick now);

  engine::Engine& eng_;
  const engine::Topology& topo_;
  metrics::RadioLedger& radio_;
  int phy_overhead_bytes_;
  DeliveryHandler deliver_;
  std::deque<OnAir> recent_;  // in-flight plus a short tail of completed frames
  std::vector<metrics::TxRecord> tx_log_;
};

}  // namespace beaconsim::mac154
