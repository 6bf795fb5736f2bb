// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <map>
#include <optional>

#include "beaconsim/dio.hpp"
#include "beaconsim/trickle.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::rpl {

inline constexpr int kInfiniteRank = std::numeric_limits<int>::max();

enum class RplRole { Root, Router, Leaf };

struct RplConfig {
  int min_hop_rank_increase = 256;
  int root_rank = 256;  // the root advertises its own MinHopRankIncrease
  int dio_size_bytes = 84;
  TrickleParams trickle;
};

struct RplNodeState {
  RplRole role = RplRole::Leaf;
  int rank = kInfiniteRank;
  int dodag_version = 0;
  std::optional<NodeId> preferred_parent;
  // Advertised rank per candidate neighbor, fed exclusively from received DIOs.
  std::map<NodeId, int> parent_set;
  TrickleState trickle;
  bool trickle_running = false;
};

struct DioOutcome {
  bool consistent = false;    // same version, same advertised rank as stored
  bool rank_changed = false;  // this node's own rank moved
  bool parent_changed = false;
};

/// Ingests a DIO from `from`. Updates the parent set, re-selects the
/// preferred parent as the lowest advertised rank (ties to the lower node
/// id), and recomputes this node's rank. Neighbors advertising a rank at or
/// above our own are kept in the set but never selected (loop avoidance).
/// Must not be called on the root.
DioOutcome process_dio(RplNodeState& state, const Dio& dio, NodeId from, const RplConfig& cfg);

/// DIS reception: returns true when the node should reset its Trickle timer
/// (routers and the root); leaves ignore solicitations.
bool process_dis(const RplNodeState& state);

}  // namespace beaconsim::rpl
