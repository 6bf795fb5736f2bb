// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "beaconsim/dio.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::mac154 {

/// Largest MAC frame (header + payload) the PHY accepts.
inline constexpr int kMaxMacFrameBytes = 127;
/// A beacon request command frame is always this many MAC bytes in total.
inline constexpr int kBeaconRequestBytes = 8;

enum class FrameKind {
  Beacon,
  BeaconRequest,
  AssociationRequest,
  AssociationReply,
  DataRequest,
  Ack,
};

inline const char* frame_kind_name(FrameKind k) {
  switch (k) {
    case FrameKind::Beacon: return "beacon";
    case FrameKind::BeaconRequest: return "beacon-request";
    case FrameKind::AssociationRequest: return "association-request";
    case FrameKind::AssociationReply: return "association-reply";
    case FrameKind::DataRequest: return "data-request";
    case FrameKind::Ack: return "ack";
  }
  return "?";
}

/// Systematic beacon payload blob: an opaque metric of fixed size carried in
/// every beacon by the baseline scheme. `rank` is the metric value the blob
/// conveys; only size_bytes occupies air time.
struct SbpBlob {
  int size_bytes = 28;
  int rank = 0;
};

using BeaconPayload = std::variant<std::monostate, rpl::Dio, SbpBlob>;

struct Frame {
  FrameKind kind = FrameKind::Beacon;
  NodeId src = 0;
  NodeId dst = kBroadcast;
  int header_bytes = 0;
  int payload_bytes = 0;
  BeaconPayload payload;  // meaningful for beacons only

  int mac_bytes() const { return header_bytes + payload_bytes; }
};

/// Validates the size invariants shared by every frame.
inline void check_frame(const Frame& f) {
  if (f.header_bytes <= 0 || f.payload_bytes < 0)
    throw std::invalid_argument("frame: bad header/payload byte counts");
  if (f.mac_bytes() > kMaxMacFrameBytes)
    throw std::invalid_argument("frame: " + std::to_string(f.mac_bytes()) +
                                " bytes exceeds the 127-byte MAC bound");
  if (f.kind == FrameKind::BeaconRequest && f.mac_bytes() != kBeaconRequestBytes)
    throw std::invalid_argument("frame: beacon request must be exactly 8 bytes");
}

/// Air time of a frame: (phy overhead + MAC bytes) * 8 bits at 250 kb/s,
/// expressed in 16 us symbol ticks, i.e. 2 ticks per byte.
inline Tick frame_duration(const Frame& f, int phy_overhead_bytes) {
  return 2 * static_cast<Tick>(phy_overhead_bytes + f.mac_bytes());
}

}  // namespace beaconsim::mac154
