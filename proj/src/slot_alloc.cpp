// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/slot_alloc.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace beaconsim::mac154 {

BeaconOffsetAllocator::BeaconOffsetAllocator(const SuperframeConfig& sf, Tick guard)
    : sf_(sf), guard_(guard) {
  if (guard <= 0 || guard > sf.sd)
    throw std::invalid_argument("beacon guard must be in (0, SD]");
}

bool BeaconOffsetAllocator::far_enough(Tick a, Tick b) const {
  Tick d = std::llabs(a - b) % sf_.bi;
  d = std::min(d, sf_.bi - d);  // circular distance within the beacon interval
  return d >= guard_;
}

std::vector<NodeId> BeaconOffsetAllocator::conflict_set(std::optional<NodeId> parent) const {
  std::vector<NodeId> out;
  if (!parent) return out;
  auto pit = entries_.find(*parent);
  if (pit == entries_.end())
    throw std::logic_error("parent has no beacon offset yet");
  out.push_back(*parent);
  if (pit->second.parent) out.push_back(*pit->second.parent);  // grandparent
  for (const auto& [id, e] : entries_) {
    if (id != *parent && e.parent == parent) out.push_back(id);  // siblings
  }
  return out;
}

Tick BeaconOffsetAllocator::assign(NodeId node, std::optional<NodeId> parent) {
  if (entries_.count(node)) throw std::logic_error("node already has a beacon offset");
  auto conflicts = conflict_set(parent);
  const Tick slots = sf_.bi / sf_.sd;
  for (Tick m = 0; m * guard_ < sf_.sd; ++m) {
    for (Tick k = 0; k < slots; ++k) {
      Tick off = k * sf_.sd + m * guard_;
      bool ok = true;
      for (NodeId c : conflicts) {
        if (!far_enough(off, entries_.at(c).offset)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        entries_[node] = Entry{off, parent};
        return off;
      }
    }
  }
  throw std::runtime_error("no beacon offset left for node " + std::to_string(node));
}

std::optional<Tick> BeaconOffsetAllocator::offset_of(NodeId node) const {
  auto it = entries_.find(node);
  if (it == entries_.end()) return std::nullopt;
  return it->second.offset;
}

}  // namespace beaconsim::mac154
