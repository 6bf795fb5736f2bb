// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "beaconsim/types.hpp"

namespace beaconsim::engine {

struct NodeSpec {
  NodeId id = 0;
  double x = 0.0;  // meters
  double y = 0.0;
  Role role = Role::Rfd;
  Tick boot_time = 0;
};

/// Static node placement plus the unit-disk radio model. Exactly one node
/// carries Role::PanCoordinator. Connectivity is symmetric and uses a
/// closed disk: distance == radio_range is still in range.
class Topology {
 public:
  Topology(std::vector<NodeSpec> nodes, double radio_range);

  bool in_range(NodeId a, NodeId b) const;
  double distance(NodeId a, NodeId b) const;
  const NodeSpec& node(NodeId id) const;
  bool has_node(NodeId id) const;

  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  double radio_range() const { return radio_range_; }
  NodeId pan_coordinator() const { return pan_; }

 private:
  std::vector<NodeSpec> nodes_;  // sorted by id
  double radio_range_;
  NodeId pan_ = 0;
  int index_of(NodeId id) const;  // -1 if unknown
};

}  // namespace beaconsim::engine
