// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "beaconsim/dio.hpp"
#include "beaconsim/frame.hpp"
#include "beaconsim/superframe.hpp"
#include "beaconsim/trickle.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::coupling {

/// How routing state travels inside beacons.
///   Trickle-gated: a DIO rides only in the first beacon after a Trickle
///   firing; scanning nodes may solicit one with a beacon request.
///   EveryBeacon: the baseline that puts a fixed-size metric blob in every
///   single beacon and never touches the routing layer's timer.
enum class Scheme { TrickleGated, EveryBeacon };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::TrickleGated: return "proposed";
    case Scheme::EveryBeacon: return "sbp";
  }
  return "?";
}

/// When a joiner starts its association exchange after picking a parent.
///   NextBeacon: sleep until just before the chosen parent's next beacon and
///   run the exchange in that CAP (the scan algorithm's final step).
///   Immediate: start in the current CAP when enough of it remains.
enum class AssocPolicy { NextBeacon, Immediate };

inline const char* assoc_policy_name(AssocPolicy p) {
  switch (p) {
    case AssocPolicy::Immediate: return "immediate";
    case AssocPolicy::NextBeacon: return "next-beacon";
  }
  return "?";
}

struct SchemeConfig {
  Scheme scheme = Scheme::TrickleGated;
  int sbp_size_bytes = 28;
  std::optional<Tick> imin_override;  // empty = derive from the superframe
  std::optional<Tick> scan_override;  // empty = one beacon interval
  AssocPolicy assoc_policy = AssocPolicy::NextBeacon;
};

/// The minimum Trickle interval that still guarantees a solicited reset
/// fires before the coordinator's next beacon: BI - SD. Rejects BO == SO
/// (no inactive period to fire in).
Tick auto_imin(const mac154::SuperframeConfig& sf);

/// Scan window length: the override when given, else one beacon interval.
Tick resolve_scan_duration(const SchemeConfig& cfg, const mac154::SuperframeConfig& sf);

/// Resolved Trickle minimum interval for a run.
Tick resolve_imin(const SchemeConfig& cfg, const mac154::SuperframeConfig& sf);

/// DIO waiting for the next beacon. A fresher firing replaces the held DIO;
/// at most one is pending per coordinator.
struct PendingDio {
  rpl::Dio dio;
  Tick ready_since = 0;
  Tick fire_tick = 0;                // Trickle expiry that produced it
  rpl::ResetCause interval_cause = rpl::ResetCause::Start;
};

/// Fills a beacon payload. Trickle-gated: embeds the pending DIO when it
/// fits the remaining frame capacity and clears it, otherwise leaves it
/// pending for the following beacon. EveryBeacon: always emits a blob of
/// the configured size carrying the advertised metric.
mac154::BeaconPayload beacon_payload(Scheme scheme, int sbp_size_bytes, int sbp_rank,
                                     std::optional<PendingDio>& pending,
                                     int capacity_bytes);

/// Whether a scanning node should send a beacon request for this beacon:
/// only on the first beacon heard from that coordinator in this scan, and
/// only when that beacon carried no DIO.
bool should_solicit(bool first_beacon_from_coordinator, bool beacon_has_dio);

}  // namespace beaconsim::coupling
