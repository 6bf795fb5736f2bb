// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "beaconsim/rng.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::analysis {

/// Stationary distribution of the timer-interval chain. State i means the
/// current interval is imin*2^i; each interval is cut short by an
/// inconsistency with probability p (back to state 0), otherwise the interval
/// doubles, saturating at imax_doublings.
std::vector<double> stationary_interval_probs(double p, int imax_doublings);

/// Delay from an emission at tick x (measured from a beacon instant) to the
/// next beacon of a period-bi schedule. Lands in (0, bi]; an emission exactly
/// on a beacon instant waits a full period.
Tick next_beacon_delay(Tick x, Tick bi);

/// Mean of next_beacon_delay over the integer band x in [lo, hi).
double expected_delay_in_band(Tick lo, Tick hi, Tick bi);

/// Closed-form mean delay when the timer sits at its minimum interval:
/// the emission is uniform on [imin/2, imin), so bi - 0.75*imin.
/// Valid for imin <= bi (the band then fits inside one beacon period).
double expected_delay_at_min_interval(Tick imin, Tick bi);

/// Mean delay with the interval drawn from the stationary chain and the
/// emission uniform in the upper half of that interval.
double expected_delay_stationary(Tick imin, int imax_doublings, double p, Tick bi);

struct MonteCarloResult {
  double mean_delay = 0.0;
  double mean_interval_index = 0.0;
  std::vector<double> state_freq;  // visit frequency per interval index
};

/// Simulates the interval chain directly (no stationary shortcut) and
/// averages the per-interval emission delay over n intervals.
MonteCarloResult monte_carlo_delay(Rng& rng, Tick imin, int imax_doublings, double p,
                                   Tick bi, int n, int burn_in = 256);

}  // namespace beaconsim::analysis
