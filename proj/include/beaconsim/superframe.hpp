// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "beaconsim/types.hpp"

namespace beaconsim::mac154 {

/// aBaseSuperframeDuration in symbols.
inline constexpr Tick kBaseSuperframe = 960;

// Simplified slotted CSMA/CA parameters.
inline constexpr Tick kBackoffUnitTicks = 20;  // aUnitBackoffPeriod
inline constexpr int kMacMinBe = 3;
inline constexpr int kMacMaxBe = 5;
inline constexpr int kMaxCsmaAttempts = 5;  // 5 busy checks -> channel access failure

/// Turnaround before an acknowledgement or command response goes on air.
inline constexpr Tick kAckTurnaroundTicks = 12;  // aTurnaroundTime
/// How long a sender waits for the matching ack after its frame ends.
inline constexpr Tick kAckWaitTicks = 54;  // macAckWaitDuration
/// Pause between the association ack and the follow-up data request.
inline constexpr Tick kResponseWaitTicks = 1920;  // 32 * aBaseSlotDuration
/// Minimum CAP remainder worth starting an association exchange in: the
/// five-frame exchange plus the response wait spans about 2900 ticks.
inline constexpr Tick kMinCapRemainingTicks = 3200;

struct SuperframeConfig {
  int bo = 0;
  int so = 0;
  Tick base = kBaseSuperframe;
  Tick bi = 0;  // beacon interval, base * 2^bo
  Tick sd = 0;  // superframe (active) duration, base * 2^so

  /// Upper bound on the active fraction, 2^(so-bo), as an exact ratio.
  int duty_num = 1;
  int duty_den = 1;
  double duty_bound() const { return static_cast<double>(duty_num) / duty_den; }
};

/// Builds the superframe timing for a (BO, SO) pair. Throws when SO > BO or
/// either order is outside [0, 14].
SuperframeConfig superframe_from(int bo, int so, Tick base = kBaseSuperframe);

struct MacConfig {
  int bo = 5;
  int so = 2;
  Tick base_superframe = kBaseSuperframe;
  int empty_beacon_bytes = 15;  // beacon MAC header incl. superframe spec
  int phy_overhead_bytes = 6;   // preamble + SFD + PHY header
  int assoc_retry_limit = 3;
  Tick wake_guard_ticks = 4;  // lead time before an expected beacon

  // Command/ack frame sizes; only the beacon request size is fixed by the
  // standard encapsulation rules, the rest are representative defaults.
  int assoc_request_bytes = 21;
  int assoc_reply_bytes = 27;
  int data_request_bytes = 18;
  int ack_bytes = 5;
};

}  // namespace beaconsim::mac154
