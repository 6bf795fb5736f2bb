// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beaconsim/network.hpp"
#include "beaconsim/scenario.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::runner {

/// One node's accounting over one time window of a run.
struct NodeMetrics {
  NodeId node = 0;
  Role role = Role::Rfd;
  int hop = -1;
  std::string window;  // "construction" or "steady"
  double tx_j = 0.0;
  double rx_j = 0.0;
  long long tx_bytes = 0;
  long long rx_bytes = 0;
  std::optional<Tick> assoc_tick;
};

struct RunOutput {
  std::uint64_t seed = 0;
  sim::RunResult result;
  Tick construction_end = 0;  // convergence tick, or run end when unconverged
  metrics::EnergyModel energy;  // model the run was accounted with
  std::vector<NodeMetrics> node_metrics;
};

/// Run-level counters derived from one run's logs, over the construction
/// window unless stated otherwise.
struct RunStats {
  long long beacons = 0;
  long long dio_beacons = 0;
  double dio_beacon_ratio = 0.0;
  long long beacon_requests = 0;       // delivered solicitations, whole run
  long long br_with_dio = 0;           // whose next beacon carried a DIO
  long long solicited_events = 0;      // DIO departures caused by a solicitation
  double solicited_delay_mean = 0.0;   // mean fire-to-beacon gap, ticks
  long long tx_bytes = 0;              // all frames, construction window
};

/// Executes one seeded run to completion. `trace_out`, when given, receives
/// the tab-separated event trace.
RunOutput run_one(const scenario::ResolvedRun& rr, std::uint64_t seed,
                  std::ostream* trace_out = nullptr);

std::vector<RunOutput> run_batch(const scenario::ResolvedRun& rr,
                                 const std::vector<std::uint64_t>& seeds);

RunStats run_stats(const RunOutput& out);

// ---- output files ----

void write_metrics_csv(std::ostream& os, const RunOutput& out);
void write_runs_csv(std::ostream& os, const std::vector<RunOutput>& outs);
/// Per-node per-window means with 95% confidence half-widths over seeds.
void write_nodes_aggregate_csv(std::ostream& os, const std::vector<RunOutput>& outs);
void write_summary(std::ostream& os, const scenario::ResolvedRun& rr,
                   const std::vector<std::uint64_t>& seeds,
                   const std::vector<RunOutput>& outs);

// ---- parameter sweeps ----

struct SweepSpec {
  std::string param;
  std::vector<std::string> values;
};

/// Parses "param=v1,v2,...". Throws scenario::ConfigError on bad syntax or
/// an unsupported parameter.
SweepSpec parse_sweep(const std::string& text);

/// The base config with one sweep value applied.
scenario::RunConfig apply_sweep_value(const scenario::RunConfig& base,
                                      const std::string& param, const std::string& value);

struct SweepPoint {
  std::string param;
  std::string value;
  std::vector<RunOutput> runs;
};

std::vector<SweepPoint> run_sweep(const scenario::RunConfig& base, const SweepSpec& spec,
                                  const std::vector<std::uint64_t>& seeds);

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);
void write_sweep_aggregate_csv(std::ostream& os, const std::vector<SweepPoint>& points);

}  // namespace beaconsim::runner
