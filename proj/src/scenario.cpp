// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace beaconsim::scenario {

namespace {

// Preset geometry is laid out for the default superframe order (BO=5,
// SO=2, BI=30720 ticks); boot instants are fixed tick values so a BO sweep
// over the same scenario keeps the identical boot schedule.
constexpr Tick kPresetBi = 30720;
constexpr Tick kBootStagger = 4 * kPresetBi;

constexpr double kCoordinatorSpacing = 25.0;
constexpr double kRange = 30.0;

// Leaf grid around each coordinator: x offsets -4..4, |y| in {22, 24, 26}.
// Every spot is within 26.3 m of its own coordinator and at least 30.4 m
// from the neighboring one, so each leaf hears exactly one coordinator.
constexpr int kGridColumns = 9;
constexpr int kGridSpotsPerCoordinator = 54;

engine::NodeSpec leaf_spot(NodeId id, int coordinator, int spot, Tick boot) {
  int column = spot % kGridColumns;
  int tier = spot / kGridColumns;  // 0..5
  double u = static_cast<double>(column - 4);
  double v = 22.0 + 2.0 * static_cast<double>(tier % 3);
  if (tier >= 3) v = -v;
  engine::NodeSpec s;
  s.id = id;
  s.x = kCoordinatorSpacing * coordinator + u;
  s.y = v;
  s.role = Role::Rfd;
  s.boot_time = boot;
  return s;
}

std::vector<engine::NodeSpec> chain_coordinators(Tick ffd_stagger) {
  std::vector<engine::NodeSpec> nodes;
  nodes.push_back({0, 0.0, 0.0, Role::PanCoordinator, 0});
  nodes.push_back({1, kCoordinatorSpacing, 0.0, Role::Ffd, ffd_stagger});
  nodes.push_back({2, 2.0 * kCoordinatorSpacing, 0.0, Role::Ffd, 2 * ffd_stagger});
  return nodes;
}

long long parse_ll(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value, int lo, int hi) {
  long long v = parse_ll(key, value);
  if (v < lo || v > hi)
    throw ConfigError(key + " must be in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "], got " + value);
  return static_cast<int>(v);
}

Tick parse_tick(const std::string& key, const std::string& value, Tick lo) {
  long long v = parse_ll(key, value);
  if (v < lo) throw ConfigError(key + " must be >= " + std::to_string(lo));
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + value + "'");
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

void set_imin(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (cfg.imin_set)
    throw ConfigError("minimum Trickle interval configured twice (" + key + ")");
  cfg.imin_set = true;
  if (value == "auto")
    cfg.scheme.imin_override.reset();
  else
    cfg.scheme.imin_override = parse_tick(key, value, 1);
}

void apply_preset(RunConfig& cfg, const std::string& value) {
  RunConfig preset;
  if (value == "default")
    preset = default_scenario();
  else if (value == "contention")
    preset = contention_scenario();
  else if (value == "compact-chain")
    preset = compact_chain_scenario();
  else if (value == "sweep-chain")
    preset = sweep_chain_scenario();
  else if (value == "crossover-chain")
    preset = crossover_chain_scenario();
  else if (value == "star-1")
    preset = star_scenario(1);
  else if (value == "star-2")
    preset = star_scenario(2);
  else if (value == "star-3")
    preset = star_scenario(3);
  else
    throw ConfigError("unknown topology.preset '" + value + "'");
  cfg.nodes = preset.nodes;
  cfg.radio_range = preset.radio_range;
}

void apply_node(RunConfig& cfg, const std::string& value) {
  auto parts = split(value, ',');
  if (parts.size() < 4 || parts.size() > 5)
    throw ConfigError("topology.node needs 'id,x,y,role[,boot=N]', got '" + value + "'");
  engine::NodeSpec s;
  s.id = parse_ll("topology.node id", parts[0]);
  s.x = parse_double("topology.node x", parts[1]);
  s.y = parse_double("topology.node y", parts[2]);
  if (parts[3] == "pan")
    s.role = Role::PanCoordinator;
  else if (parts[3] == "ffd")
    s.role = Role::Ffd;
  else if (parts[3] == "rfd")
    s.role = Role::Rfd;
  else
    throw ConfigError("topology.node role must be pan|ffd|rfd, got '" + parts[3] + "'");
  if (parts.size() == 5) {
    if (parts[4].rfind("boot=", 0) != 0)
      throw ConfigError("topology.node fifth field must be boot=N, got '" + parts[4] + "'");
    s.boot_time = parse_tick("topology.node boot", parts[4].substr(5), 0);
  }
  cfg.nodes.push_back(s);
}

}  // namespace

// Leaf k belongs to coordinator k mod 3, so any one coordinator sees a new
// joiner every 3 * stagger ticks.
RunConfig chain_scenario(int leaves_per_coordinator, Tick stagger) {
  if (leaves_per_coordinator < 0 || leaves_per_coordinator > kGridSpotsPerCoordinator)
    throw ConfigError("chain scenario supports 0.." +
                      std::to_string(kGridSpotsPerCoordinator) +
                      " leaves per coordinator");
  if (stagger <= 0) throw ConfigError("chain scenario stagger must be positive");
  RunConfig cfg;
  cfg.radio_range = kRange;
  cfg.nodes = chain_coordinators(stagger);
  int total = 3 * leaves_per_coordinator;
  for (int k = 0; k < total; ++k)
    cfg.nodes.push_back(
        leaf_spot(100 + k, k % 3, k / 3, (3 + static_cast<Tick>(k)) * stagger));
  return cfg;
}

RunConfig default_scenario() { return chain_scenario(54, kBootStagger); }

RunConfig contention_scenario() {
  RunConfig cfg = chain_scenario(54, kBootStagger);
  for (auto& n : cfg.nodes) n.boot_time = 0;
  return cfg;
}

RunConfig compact_chain_scenario() { return chain_scenario(2, 3 * kPresetBi); }

RunConfig sweep_chain_scenario() { return chain_scenario(18, kBootStagger); }

// Three beacon intervals of stagger per joiner. The blob scheme's cost
// grows linearly with the stagger while natural timer firings grow only
// logarithmically (doubling backoff), so the stagger sets where the two
// schemes' construction overhead meets; this value centers the meeting
// point at a 28-byte blob, one third of the 84-byte routing update
// (calibrated over seeds 101-140 with one-stagger boot jitter).
RunConfig crossover_chain_scenario() { return chain_scenario(18, 3 * kPresetBi); }

RunConfig star_scenario(int coordinators) {
  if (coordinators < 1 || coordinators > 3)
    throw ConfigError("star scenario supports 1..3 coordinators");
  RunConfig cfg;
  cfg.radio_range = kRange;
  // The probe at (45, 0) hears nodes 1..3 but never the top coordinator at
  // the origin (45 m away). It boots two hundred ticks before node 1's
  // beacon, a hundred beacon intervals in, when Trickle intervals have
  // decayed to their cap and almost no beacon carries a payload naturally.
  cfg.nodes.push_back({0, 0.0, 0.0, Role::PanCoordinator, 0});
  cfg.nodes.push_back({1, 25.0, 0.0, Role::Ffd, 0});
  if (coordinators >= 2) cfg.nodes.push_back({2, 25.0, 20.0, Role::Ffd, 4 * kPresetBi});
  if (coordinators >= 3) cfg.nodes.push_back({3, 25.0, -20.0, Role::Ffd, 8 * kPresetBi});
  cfg.nodes.push_back({9, 45.0, 0.0, Role::Rfd, 100 * kPresetBi + 3640});
  return cfg;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  // mac.*
  if (key == "mac.bo") cfg.mac.bo = parse_int(key, value, 0, 14);
  else if (key == "mac.so") cfg.mac.so = parse_int(key, value, 0, 14);
  else if (key == "mac.empty_beacon_bytes") cfg.mac.empty_beacon_bytes = parse_int(key, value, 1, 127);
  else if (key == "mac.phy_overhead_bytes") cfg.mac.phy_overhead_bytes = parse_int(key, value, 0, 64);
  else if (key == "mac.assoc_retry_limit") cfg.mac.assoc_retry_limit = parse_int(key, value, 0, 100);
  else if (key == "mac.wake_guard_ticks") cfg.mac.wake_guard_ticks = parse_tick(key, value, 0);
  // rpl.*
  else if (key == "rpl.imin" || key == "rpl.imin_ticks" || key == "coupling.imin_policy")
    set_imin(cfg, key, value);
  else if (key == "rpl.imax_doublings") cfg.imax_doublings = parse_int(key, value, 0, 30);
  else if (key == "rpl.k") cfg.trickle_k = parse_int(key, value, 1, 1000000);
  else if (key == "rpl.min_hop_rank_increase") cfg.min_hop_rank_increase = parse_int(key, value, 1, 1 << 20);
  else if (key == "rpl.root_rank") cfg.root_rank = parse_int(key, value, 1, 1 << 20);
  else if (key == "rpl.dio_size_bytes") cfg.dio_size_bytes = parse_int(key, value, 1, 127);
  // coupling.*
  else if (key == "coupling.scheme") {
    if (value == "proposed") cfg.scheme.scheme = coupling::Scheme::TrickleGated;
    else if (value == "sbp") cfg.scheme.scheme = coupling::Scheme::EveryBeacon;
    else throw ConfigError("coupling.scheme must be proposed|sbp, got '" + value + "'");
  } else if (key == "coupling.sbp_size_bytes")
    cfg.scheme.sbp_size_bytes = parse_int(key, value, 1, 127);
  else if (key == "coupling.scan_duration") {
    if (value == "auto") cfg.scheme.scan_override.reset();
    else cfg.scheme.scan_override = parse_tick(key, value, 1);
  } else if (key == "coupling.assoc_policy") {
    if (value == "next-beacon") cfg.scheme.assoc_policy = coupling::AssocPolicy::NextBeacon;
    else if (value == "immediate") cfg.scheme.assoc_policy = coupling::AssocPolicy::Immediate;
    else throw ConfigError("coupling.assoc_policy must be next-beacon|immediate");
  }
  // energy.*
  else if (key == "energy.i_tx") cfg.energy.i_tx = parse_double(key, value);
  else if (key == "energy.i_rx") cfg.energy.i_rx = parse_double(key, value);
  else if (key == "energy.i_sleep") cfg.energy.i_sleep = parse_double(key, value);
  else if (key == "energy.v") cfg.energy.voltage = parse_double(key, value);
  // sim.*
  else if (key == "sim.duration") {
    if (value == "until-converged") { cfg.until_converged = true; cfg.fixed_duration = 0; }
    else { cfg.until_converged = false; cfg.fixed_duration = parse_tick(key, value, 1); }
  } else if (key == "sim.steady_ticks") cfg.steady_ticks = parse_tick(key, value, 0);
  else if (key == "sim.boot_jitter") cfg.boot_jitter = parse_tick(key, value, 0);
  else if (key == "sim.max_ticks") cfg.max_ticks = parse_tick(key, value, 1);
  else if (key == "sim.seeds") {
    if (value.find(',') != std::string::npos) {
      cfg.seed_list.clear();
      for (const auto& part : split(value, ',')) {
        if (part.empty()) continue;
        cfg.seed_list.push_back(static_cast<std::uint64_t>(parse_ll(key, part)));
      }
      if (cfg.seed_list.empty()) throw ConfigError("sim.seeds list is empty");
    } else {
      cfg.seed_count = parse_int(key, value, 1, 1000000);
      cfg.seed_list.clear();
    }
  } else if (key == "sim.base_seed")
    cfg.base_seed = static_cast<std::uint64_t>(parse_ll(key, value));
  // topology.*
  else if (key == "topology.radio_range") {
    cfg.radio_range = parse_double(key, value);
    if (cfg.radio_range <= 0.0) throw ConfigError("topology.radio_range must be positive");
  } else if (key == "topology.preset") apply_preset(cfg, value);
  else if (key == "topology.node") apply_node(cfg, value);
  else throw ConfigError("unknown config key: " + key);
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    apply_key(cfg, key, value);
  }
  return cfg;
}

std::vector<std::uint64_t> resolve_seeds(const RunConfig& cfg) {
  if (!cfg.seed_list.empty()) return cfg.seed_list;
  std::vector<std::uint64_t> seeds;
  seeds.reserve(static_cast<std::size_t>(cfg.seed_count));
  for (int i = 0; i < cfg.seed_count; ++i)
    seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(i));
  return seeds;
}

ResolvedRun resolve(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (cfg.nodes.empty()) {
    RunConfig def = default_scenario();
    cfg.nodes = def.nodes;
  }

  mac154::SuperframeConfig sf;
  try {
    sf = mac154::superframe_from(cfg.mac.bo, cfg.mac.so);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  if (cfg.scheme.scheme == coupling::Scheme::TrickleGated &&
      cfg.dio_size_bytes > mac154::kMaxMacFrameBytes - cfg.mac.empty_beacon_bytes)
    throw ConfigError("rpl.dio_size_bytes does not fit a beacon frame");
  if (cfg.scheme.scheme == coupling::Scheme::EveryBeacon &&
      cfg.scheme.sbp_size_bytes > mac154::kMaxMacFrameBytes - cfg.mac.empty_beacon_bytes)
    throw ConfigError("coupling.sbp_size_bytes does not fit a beacon frame");

  sim::RunParams params;
  params.mac = cfg.mac;
  params.sf = sf;
  params.scheme = cfg.scheme;
  params.energy = cfg.energy;
  params.rpl.min_hop_rank_increase = cfg.min_hop_rank_increase;
  params.rpl.root_rank = cfg.root_rank;
  params.rpl.dio_size_bytes = cfg.dio_size_bytes;
  params.rpl.trickle.imax_doublings = cfg.imax_doublings;
  params.rpl.trickle.k = cfg.trickle_k;
  try {
    params.rpl.trickle.imin = coupling::resolve_imin(cfg.scheme, sf);
    params.scan_duration = coupling::resolve_scan_duration(cfg.scheme, sf);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  params.until_converged = cfg.until_converged;
  params.fixed_duration = cfg.fixed_duration;
  params.steady_ticks = cfg.steady_ticks;
  params.boot_jitter = cfg.boot_jitter;

  Tick last_boot = 0;
  for (const auto& n : cfg.nodes) last_boot = std::max(last_boot, n.boot_time);
  if (cfg.max_ticks > 0)
    params.max_ticks = cfg.max_ticks;
  else if (cfg.until_converged)
    params.max_ticks = last_boot + cfg.boot_jitter + 300 * sf.bi + cfg.steady_ticks;
  else
    params.max_ticks = cfg.fixed_duration;

  engine::Topology topology(cfg.nodes, cfg.radio_range);

  // every node must be able to reach the coordinator tree through
  // beacon-capable hops
  std::set<NodeId> reached{topology.pan_coordinator()};
  std::deque<NodeId> frontier{topology.pan_coordinator()};
  while (!frontier.empty()) {
    NodeId cur = frontier.front();
    frontier.pop_front();
    for (const auto& other : topology.nodes()) {
      if (reached.count(other.id) || !topology.in_range(cur, other.id)) continue;
      reached.insert(other.id);
      if (other.role != Role::Rfd) frontier.push_back(other.id);
    }
  }
  for (const auto& n : topology.nodes())
    if (!reached.count(n.id))
      throw ConfigError("node " + std::to_string(n.id) +
                        " cannot reach the coordinator tree");

  std::vector<std::string> warnings;
  if (params.rpl.trickle.imin > sf.bi - sf.sd)
    warnings.push_back(
        "trickle imin exceeds BI - SD: a solicited DIO may miss the next beacon");
  if (params.scan_duration < sf.bi / 2)
    warnings.push_back("scan window is shorter than half a beacon interval");

  return ResolvedRun{params, std::move(topology), std::move(warnings)};
}

}  // namespace beaconsim::scenario
