// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/analysis.hpp"

#include <stdexcept>

namespace beaconsim::analysis {

std::vector<double> stationary_interval_probs(double p, int imax_doublings) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
  if (imax_doublings < 0) throw std::invalid_argument("imax_doublings must be >= 0");
  std::vector<double> probs(static_cast<std::size_t>(imax_doublings) + 1);
  double q = 1.0;  // (1-p)^i
  for (int i = 0; i < imax_doublings; ++i) {
    probs[static_cast<std::size_t>(i)] = q * p;
    q *= 1.0 - p;
  }
  probs[static_cast<std::size_t>(imax_doublings)] = q;
  return probs;
}

Tick next_beacon_delay(Tick x, Tick bi) {
  if (bi <= 0) throw std::invalid_argument("bi must be positive");
  if (x < 0) throw std::invalid_argument("x must be >= 0");
  return bi - x % bi;  // x % bi == 0 yields a full period, as required
}

namespace {
// sum of (x mod bi) for x in [0, n)
double mod_prefix_sum(Tick n, Tick bi) {
  Tick q = n / bi, r = n % bi;
  return static_cast<double>(q) * (static_cast<double>(bi) * (bi - 1) / 2.0) +
         static_cast<double>(r) * (r - 1) / 2.0;
}
}  // namespace

double expected_delay_in_band(Tick lo, Tick hi, Tick bi) {
  if (lo < 0 || hi <= lo) throw std::invalid_argument("need 0 <= lo < hi");
  if (bi <= 0) throw std::invalid_argument("bi must be positive");
  double mean_mod = (mod_prefix_sum(hi, bi) - mod_prefix_sum(lo, bi)) /
                    static_cast<double>(hi - lo);
  return static_cast<double>(bi) - mean_mod;
}

double expected_delay_at_min_interval(Tick imin, Tick bi) {
  if (imin <= 0 || bi <= 0) throw std::invalid_argument("imin and bi must be positive");
  if (imin > bi)
    throw std::invalid_argument("closed form needs imin <= bi; use the band mean");
  return static_cast<double>(bi) - 0.75 * static_cast<double>(imin);
}

double expected_delay_stationary(Tick imin, int imax_doublings, double p, Tick bi) {
  if (imin <= 0) throw std::invalid_argument("imin must be positive");
  auto probs = stationary_interval_probs(p, imax_doublings);
  double total = 0.0;
  for (int i = 0; i <= imax_doublings; ++i) {
    Tick interval = imin << i;
    Tick lo = (interval + 1) / 2;  // matches the timer's own draw band
    total += probs[static_cast<std::size_t>(i)] * expected_delay_in_band(lo, interval, bi);
  }
  return total;
}

MonteCarloResult monte_carlo_delay(Rng& rng, Tick imin, int imax_doublings, double p,
                                   Tick bi, int n, int burn_in) {
  if (imin <= 0 || bi <= 0) throw std::invalid_argument("imin and bi must be positive");
  if (n <= 0) throw std::invalid_argument("n must be positive");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
  MonteCarloResult result;
  result.state_freq.assign(static_cast<std::size_t>(imax_doublings) + 1, 0.0);
  int state = 0;
  auto step = [&](bool record) {
    Tick interval = imin << state;
    Tick lo = (interval + 1) / 2;
    Tick x = rng.uniform(lo, interval);
    if (record) {
      result.mean_delay += static_cast<double>(next_beacon_delay(x, bi));
      result.mean_interval_index += state;
      result.state_freq[static_cast<std::size_t>(state)] += 1.0;
    }
    // inconsistency cuts the next interval back to the minimum
    if (rng.uniform_real(0.0, 1.0) < p)
      state = 0;
    else if (state < imax_doublings)
      ++state;
  };
  for (int i = 0; i < burn_in; ++i) step(false);
  for (int i = 0; i < n; ++i) step(true);
  result.mean_delay /= n;
  result.mean_interval_index /= n;
  for (auto& f : result.state_freq) f /= n;
  return result;
}

}  // namespace beaconsim::analysis
