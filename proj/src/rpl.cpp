// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/rpl.hpp"

#include <stdexcept>

namespace beaconsim::rpl {

DioOutcome process_dio(RplNodeState& state, const Dio& dio, NodeId from, const RplConfig& cfg) {
  if (state.role == RplRole::Root)
    throw std::logic_error("rpl: the root does not process DIOs");

  DioOutcome out;
  auto it = state.parent_set.find(from);
  out.consistent =
      it != state.parent_set.end() && it->second == dio.rank && state.dodag_version == dio.version;
  state.parent_set[from] = dio.rank;

  // Preferred parent: lowest advertised rank, ties to the lower node id.
  // Candidates advertising a rank >= our current one are skipped so a
  // descendant can never be adopted as parent.
  std::optional<NodeId> best;
  int best_rank = kInfiniteRank;
  for (const auto& [id, rank] : state.parent_set) {
    if (state.rank != kInfiniteRank && rank >= state.rank) continue;
    if (rank < best_rank || (rank == best_rank && best && id < *best)) {
      best = id;
      best_rank = rank;
    }
  }
  if (best) {
    const int new_rank = best_rank + cfg.min_hop_rank_increase;
    out.parent_changed = state.preferred_parent != best;
    out.rank_changed = state.rank != new_rank;
    state.preferred_parent = best;
    state.rank = new_rank;
  }
  return out;
}

bool process_dis(const RplNodeState& state) { return state.role != RplRole::Leaf; }

}  // namespace beaconsim::rpl
