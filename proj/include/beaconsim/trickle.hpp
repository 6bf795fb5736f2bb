// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "beaconsim/rng.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::rpl {

enum class ResetCause { Start, Dis, BeaconRequest, Inconsistency, Natural };

inline const char* reset_cause_name(ResetCause c) {
  switch (c) {
    case ResetCause::Start: return "start";
    case ResetCause::Dis: return "dis";
    case ResetCause::BeaconRequest: return "beacon-request";
    case ResetCause::Inconsistency: return "inconsistency";
    case ResetCause::Natural: return "natural";
  }
  return "?";
}

struct TrickleParams {
  Tick imin = 0;
  int imax_doublings = 8;  // interval caps at imin * 2^imax_doublings
  int k = 10;              // redundancy constant
};

/// Trickle timer state. The firing instant doubles as the interval end: the
/// transmission decision is evaluated at t, and the next (possibly doubled)
/// interval starts immediately afterwards.
struct TrickleState {
  TrickleParams params;
  int n = 0;                // current doubling count
  Tick interval_len = 0;    // I = imin * 2^n
  Tick interval_start = 0;
  Tick t = 0;               // absolute firing instant
  int c = 0;                // consistent-message counter
  ResetCause interval_cause = ResetCause::Start;
  std::uint64_t generation = 0;  // bumps whenever t is rescheduled
};

struct TrickleFire {
  bool emit = false;             // c < k at the firing instant
  ResetCause fired_cause = ResetCause::Start;  // cause of the interval that elapsed
};

/// Starts a timer at `now` with a fresh minimum interval.
TrickleState trickle_start(const TrickleParams& params, Tick now, Rng& rng);

/// Handles the expiry at now == state.t: decides whether to emit, then ends
/// the interval, doubling it up to the cap and drawing the next t.
TrickleFire trickle_on_expire(TrickleState& state, Rng& rng);

/// Collapses the interval back to imin at `now`. Safe to call repeatedly in
/// the same tick; the last reset wins.
void trickle_reset(TrickleState& state, Tick now, ResetCause cause, Rng& rng);

}  // namespace beaconsim::rpl
