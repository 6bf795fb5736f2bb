// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/trickle.hpp"

#include <stdexcept>

namespace beaconsim::rpl {

namespace {

// Draws t uniformly from [start + I/2, start + I). The lower edge rounds up
// so t - start >= I/2 holds even for odd I.
Tick draw_t(Tick start, Tick interval_len, Rng& rng) {
  const Tick lo = start + (interval_len + 1) / 2;
  const Tick hi = start + interval_len;
  if (lo >= hi) return lo;
  return rng.uniform(lo, hi);
}

}  // namespace

TrickleState trickle_start(const TrickleParams& params, Tick now, Rng& rng) {
  if (params.imin <= 0) throw std::invalid_argument("trickle: imin must be positive");
  if (params.imax_doublings < 0) throw std::invalid_argument("trickle: imax_doublings < 0");
  if (params.k <= 0) throw std::invalid_argument("trickle: redundancy k must be positive");
  TrickleState s;
  s.params = params;
  s.n = 0;
  s.interval_len = params.imin;
  s.interval_start = now;
  s.c = 0;
  s.interval_cause = ResetCause::Start;
  s.t = draw_t(now, s.interval_len, rng);
  s.generation = 1;
  return s;
}

TrickleFire trickle_on_expire(TrickleState& state, Rng& rng) {
  TrickleFire fire;
  fire.emit = state.c < state.params.k;
  fire.fired_cause = state.interval_cause;
  // The interval ends here: double (capped) and restart from the fire instant.
  state.n = state.n + 1 > state.params.imax_doublings ? state.params.imax_doublings : state.n + 1;
  state.interval_len = state.params.imin << state.n;
  state.interval_start = state.t;
  state.c = 0;
  state.interval_cause = ResetCause::Natural;
  state.t = draw_t(state.interval_start, state.interval_len, rng);
  ++state.generation;
  return fire;
}

void trickle_reset(TrickleState& state, Tick now, ResetCause cause, Rng& rng) {
  state.n = 0;
  state.interval_len = state.params.imin;
  state.interval_start = now;
  state.c = 0;
  state.interval_cause = cause;
  state.t = draw_t(now, state.interval_len, rng);
  ++state.generation;
}

}  // namespace beaconsim::rpl
