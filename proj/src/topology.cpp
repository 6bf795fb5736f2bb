// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beaconsim::engine {

Topology::Topology(std::vector<NodeSpec> nodes, double radio_range)
    : nodes_(std::move(nodes)), radio_range_(radio_range) {
  if (nodes_.empty()) throw std::invalid_argument("topology: no nodes");
  if (!(radio_range_ > 0.0)) throw std::invalid_argument("topology: radio_range must be positive");
  std::sort(nodes_.begin(), nodes_.end(),
            [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
  int pan_count = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i > 0 && nodes_[i].id == nodes_[i - 1].id)
      throw std::invalid_argument("topology: duplicate node id " + std::to_string(nodes_[i].id));
    if (nodes_[i].boot_time < 0)
      throw std::invalid_argument("topology: negative boot_time for node " +
                                  std::to_string(nodes_[i].id));
    if (nodes_[i].role == Role::PanCoordinator) {
      pan_ = nodes_[i].id;
      ++pan_count;
    }
  }
  if (pan_count != 1)
    throw std::invalid_argument("topology: expected exactly one PAN coordinator, got " +
                                std::to_string(pan_count));
}

int Topology::index_of(NodeId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const NodeSpec& n, NodeId v) { return n.id < v; });
  if (it == nodes_.end() || it->id != id) return -1;
  return static_cast<int>(it - nodes_.begin());
}

bool Topology::has_node(NodeId id) const { return index_of(id) >= 0; }

const NodeSpec& Topology::node(NodeId id) const {
  const int i = index_of(id);
  if (i < 0) throw std::invalid_argument("topology: unknown node id " + std::to_string(id));
  return nodes_[static_cast<std::size_t>(i)];
}

double Topology::distance(NodeId a, NodeId b) const {
  const NodeSpec& na = node(a);
  const NodeSpec& nb = node(b);
  return std::hypot(na.x - nb.x, na.y - nb.y);
}

bool Topology::in_range(NodeId a, NodeId b) const { return distance(a, b) <= radio_range_; }

}  // namespace beaconsim::engine
