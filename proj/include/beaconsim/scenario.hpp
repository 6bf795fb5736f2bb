// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "beaconsim/coupling.hpp"
#include "beaconsim/metrics.hpp"
#include "beaconsim/network.hpp"
#include "beaconsim/superframe.hpp"
#include "beaconsim/topology.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::scenario {

/// Any rejected configuration input: unknown key, malformed value, value
/// out of range, or an inconsistent combination.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything a run needs, in raw configurable form. Field groups mirror
/// the flat config-file keys (mac.*, rpl.*, coupling.*, energy.*, sim.*,
/// topology.*).
struct RunConfig {
  mac154::MacConfig mac;

  // routing layer
  int imax_doublings = 8;
  int trickle_k = 10;
  int min_hop_rank_increase = 256;
  int root_rank = 256;
  int dio_size_bytes = 84;

  coupling::SchemeConfig scheme;  // carries the resolved-later imin/scan overrides
  metrics::EnergyModel energy;

  // run control
  bool until_converged = true;
  Tick fixed_duration = 0;  // used when !until_converged
  Tick steady_ticks = 0;    // extra simulated time after convergence
  Tick max_ticks = 0;       // 0 = derive from the topology
  Tick boot_jitter = 0;     // seeded uniform boot-phase shift, per node

  int seed_count = 20;
  std::uint64_t base_seed = 1;
  std::vector<std::uint64_t> seed_list;  // explicit list wins over the count

  double radio_range = 30.0;
  std::vector<engine::NodeSpec> nodes;  // empty = default scenario

  bool imin_set = false;  // guards against configuring the minimum interval twice
};

/// A config ready to execute: validated parameters plus the topology.
struct ResolvedRun {
  sim::RunParams params;
  engine::Topology topology;
  std::vector<std::string> warnings;
};

// ---- preset scenarios (geometry documented in scenario.cpp) ----

/// Three-coordinator chain with `leaves_per_coordinator` leaves each on an
/// isolated grid; leaf k boots at (3 + k) * stagger. The building block
/// behind the chain presets.
RunConfig chain_scenario(int leaves_per_coordinator, Tick stagger);

/// Three-coordinator chain with 54 leaves per coordinator, boots staggered
/// so joins arrive one at a time. The everyday workload.
RunConfig default_scenario();

/// The same chain geometry with every node booting at tick zero, so the
/// construction length is governed by the scan window instead of the boot
/// schedule. Used for long-scan experiments.
RunConfig contention_scenario();

/// Nine-node chain (three coordinators, six leaves) for batches that need
/// thousands of short runs.
RunConfig compact_chain_scenario();

/// Mid-sized chain (three coordinators, 18 leaves each) for parameter
/// sweeps that repeat whole construction runs many times per point.
RunConfig sweep_chain_scenario();

/// The sweep chain with its boot stagger calibrated so the construction
/// overhead of the gated scheme meets the every-beacon scheme at one third
/// of the routing-update size.
RunConfig crossover_chain_scenario();

/// One unassociated probe within range of `coordinators` (1..3) beaconing
/// routers, deep into steady state. Exercises the scan/sleep bookkeeping in
/// isolation.
RunConfig star_scenario(int coordinators);

// ---- flat key=value config ----

/// Applies one `section.key = value` assignment. Throws ConfigError on an
/// unknown key or a bad value.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses a whole config text: one assignment per line, '#' starts a
/// comment, blank lines ignored.
RunConfig parse_config_text(const std::string& text);

/// The seeds a batch will run: the explicit list when given, otherwise
/// base_seed, base_seed+1, ... seed_count times.
std::vector<std::uint64_t> resolve_seeds(const RunConfig& cfg);

/// Validates the config, builds the topology (filling in the default
/// scenario when no nodes were given), resolves derived quantities, and
/// collects advisory warnings.
ResolvedRun resolve(const RunConfig& cfg);

}  // namespace beaconsim::scenario
