// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "beaconsim/superframe.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::mac154 {

/// Spacing enforced between beacon starts of coordinators that share a
/// potential listener; comfortably above the longest beacon air time
/// (2 * (phy overhead + 127) = 266 ticks).
inline constexpr Tick kBeaconGuardTicks = 512;

/// Central static scheduler of coordinator beacon phases within the beacon
/// interval. Preference order: classic non-overlapping superframe slots
/// (multiples of SD), then guard-spaced offsets packed inside already-used
/// slots for configurations with more nearby coordinators than slots.
///
/// The hard constraint is beacon separation among coordinators within tree
/// distance 2 (parent, grandparent, siblings): exactly the pairs some node
/// must be able to hear without overlap. Active periods themselves may
/// overlap; a coordinator is in rx throughout its CAP either way.
class BeaconOffsetAllocator {
 public:
  explicit BeaconOffsetAllocator(const SuperframeConfig& sf, Tick guard = kBeaconGuardTicks);

  /// Allocates a beacon phase in [0, BI). The PAN coordinator passes no
  /// parent and always receives offset 0; every other coordinator's parent
  /// must have been allocated already. Throws when no guard-separated
  /// offset remains.
  Tick assign(NodeId node, std::optional<NodeId> parent);

  std::optional<Tick> offset_of(NodeId node) const;

 private:
  std::vector<NodeId> conflict_set(std::optional<NodeId> parent) const;
  bool far_enough(Tick a, Tick b) const;

  SuperframeConfig sf_;
  Tick guard_;
  struct Entry {
    Tick offset = 0;
    std::optional<NodeId> parent;
  };
  std::map<NodeId, Entry> entries_;
};

}  // namespace beaconsim::mac154
