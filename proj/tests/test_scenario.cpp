// SPDX-License-Identifier: Apache-2.0
#include <string>

#include "beaconsim/runner.hpp"
#include "beaconsim/scenario.hpp"
#include "doctest.h"

using namespace beaconsim;
using namespace beaconsim::scenario;

TEST_SUITE("scenario") {

TEST_CASE("config text parsing: comments, blanks, and errors carry line numbers") {
  auto cfg = parse_config_text(
      "# leading comment\n"
      "\n"
      "mac.bo = 4   # trailing comment\n"
      "  sim.steady_ticks=500\n");
  CHECK(cfg.mac.bo == 4);
  CHECK(cfg.steady_ticks == 500);

  CHECK_THROWS_WITH_AS(parse_config_text("mac.bo = 4\nnot an assignment\n"),
                       doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("mystery.key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("mac.bo =\n"), ConfigError);
}

TEST_CASE("the minimum interval can be set once under any spelling") {
  RunConfig cfg;
  apply_key(cfg, "rpl.imin", "20000");
  CHECK(cfg.scheme.imin_override == Tick{20000});
  CHECK_THROWS_AS(apply_key(cfg, "rpl.imin_ticks", "30000"), ConfigError);
  CHECK_THROWS_AS(apply_key(cfg, "coupling.imin_policy", "auto"), ConfigError);

  RunConfig cfg2;
  apply_key(cfg2, "coupling.imin_policy", "auto");
  CHECK(!cfg2.scheme.imin_override.has_value());
  CHECK(cfg2.imin_set);
}

TEST_CASE("out-of-range values are rejected with the offending key") {
  RunConfig cfg;
  CHECK_THROWS_AS(apply_key(cfg, "mac.bo", "15"), ConfigError);
  CHECK_THROWS_AS(apply_key(cfg, "mac.bo", "-1"), ConfigError);
  CHECK_THROWS_AS(apply_key(cfg, "rpl.dio_size_bytes", "128"), ConfigError);
  CHECK_THROWS_AS(apply_key(cfg, "coupling.scheme", "both"), ConfigError);
  CHECK_THROWS_AS(apply_key(cfg, "sim.max_ticks", "0"), ConfigError);
  CHECK_THROWS_AS(apply_key(cfg, "topology.radio_range", "-5"), ConfigError);
  CHECK_THROWS_AS(apply_key(cfg, "topology.node", "1,0,0,gateway"), ConfigError);
}

TEST_CASE("default scenario: three coordinators, isolated leaf grids") {
  auto rr = resolve(default_scenario());
  const auto& topo = rr.topology;
  CHECK(topo.nodes().size() == 165);
  CHECK(topo.pan_coordinator() == 0);

  int leaves = 0;
  for (const auto& n : topo.nodes()) {
    if (n.role != Role::Rfd) continue;
    ++leaves;
    // Each leaf hears exactly one of the three coordinators.
    int audible = 0;
    for (NodeId c : {NodeId{0}, NodeId{1}, NodeId{2}})
      if (topo.in_range(n.id, c)) ++audible;
    CHECK(audible == 1);
  }
  CHECK(leaves == 162);
  // Coordinator chain is connected but the ends do not hear each other.
  CHECK(topo.in_range(0, 1));
  CHECK(topo.in_range(1, 2));
  CHECK(!topo.in_range(0, 2));
}

TEST_CASE("chain scenarios scale by leaves and stagger") {
  auto cfg = chain_scenario(18, 92160);
  CHECK(cfg.nodes.size() == 57);
  Tick last = 0;
  for (const auto& n : cfg.nodes) last = std::max(last, n.boot_time);
  CHECK(last == (3 + 53) * Tick{92160});
  CHECK_THROWS_AS(chain_scenario(55, 92160), ConfigError);  // grid holds 54
  CHECK_THROWS_AS(chain_scenario(3, 0), ConfigError);

  CHECK(sweep_chain_scenario().nodes.size() == 57);
  CHECK(crossover_chain_scenario().nodes.size() == 57);

  RunConfig preset;
  apply_key(preset, "topology.preset", "sweep-chain");
  CHECK(preset.nodes.size() == 57);
  apply_key(preset, "topology.preset", "crossover-chain");
  CHECK(preset.nodes.size() == 57);
}

TEST_CASE("boot jitter is parsed and extends the automatic run cap") {
  RunConfig cfg = compact_chain_scenario();
  apply_key(cfg, "sim.boot_jitter", "122880");
  CHECK(cfg.boot_jitter == 122880);
  auto rr = scenario::resolve(cfg);
  CHECK(rr.params.boot_jitter == 122880);

  RunConfig plain = compact_chain_scenario();
  auto rr0 = scenario::resolve(plain);
  CHECK(rr.params.max_ticks == rr0.params.max_ticks + 122880);
  CHECK_THROWS_AS(apply_key(cfg, "sim.boot_jitter", "-1"), ConfigError);
}

TEST_CASE("star scenarios place the probe out of the root's range") {
  auto rr = resolve(star_scenario(2));
  const auto& topo = rr.topology;
  CHECK(topo.in_range(9, 1));
  CHECK(topo.in_range(9, 2));
  CHECK(!topo.in_range(9, 0));
  CHECK_THROWS_AS(star_scenario(4), ConfigError);
}

TEST_CASE("an unreachable node fails resolution") {
  RunConfig cfg;
  cfg.nodes.push_back({0, 0, 0, Role::PanCoordinator, 0});
  cfg.nodes.push_back({1, 200, 0, Role::Rfd, 0});
  cfg.radio_range = 30;
  CHECK_THROWS_AS(resolve(cfg), ConfigError);
}

TEST_CASE("seeds come from the list when given, else from the counter") {
  RunConfig cfg;
  cfg.seed_count = 3;
  cfg.base_seed = 7;
  auto seq = resolve_seeds(cfg);
  REQUIRE(seq.size() == 3);
  CHECK(seq[0] == 7);
  CHECK(seq[2] == 9);

  apply_key(cfg, "sim.seeds", "11,5,5");
  auto listed = resolve_seeds(cfg);
  REQUIRE(listed.size() == 3);
  CHECK(listed[0] == 11);
  CHECK(listed[1] == 5);

  apply_key(cfg, "sim.seeds", "4");  // plain count clears the list
  CHECK(resolve_seeds(cfg).size() == 4);
}

TEST_CASE("automatic run cap leaves room for the steady window") {
  RunConfig cfg = compact_chain_scenario();
  cfg.steady_ticks = 22'500'000;
  auto rr = resolve(cfg);
  Tick last_boot = 0;
  for (const auto& n : cfg.nodes) last_boot = std::max(last_boot, n.boot_time);
  CHECK(rr.params.max_ticks >= last_boot + cfg.steady_ticks);
  CHECK(rr.params.steady_ticks == 22'500'000);
}

TEST_CASE("oversized payloads cannot pass resolution") {
  RunConfig cfg = compact_chain_scenario();
  cfg.scheme.scheme = coupling::Scheme::EveryBeacon;
  cfg.scheme.sbp_size_bytes = 120;  // 120 + 15 header > 127
  CHECK_THROWS_AS(resolve(cfg), ConfigError);

  RunConfig cfg2 = compact_chain_scenario();
  cfg2.dio_size_bytes = 120;
  CHECK_THROWS_AS(resolve(cfg2), ConfigError);
}

TEST_CASE("resolution warns when a solicited firing can miss the next beacon") {
  RunConfig cfg = compact_chain_scenario();
  apply_key(cfg, "rpl.imin", std::to_string(2 * 30720));
  auto rr = resolve(cfg);
  REQUIRE(!rr.warnings.empty());
  CHECK(rr.warnings[0].find("imin") != std::string::npos);

  auto clean = resolve(compact_chain_scenario());
  CHECK(clean.warnings.empty());
}

TEST_CASE("sweep specs parse the parameter and its value list") {
  auto spec = runner::parse_sweep("bo=3,4,5");
  CHECK(spec.param == "bo");
  REQUIRE(spec.values.size() == 3);
  CHECK(spec.values[2] == "5");

  CHECK_THROWS_AS(runner::parse_sweep("bo"), ConfigError);
  CHECK_THROWS_AS(runner::parse_sweep("bo="), ConfigError);
  CHECK_THROWS_AS(runner::parse_sweep("voltage=1,2"), ConfigError);
}

TEST_CASE("sweep values override the base config one point at a time") {
  RunConfig base = compact_chain_scenario();
  auto swept = runner::apply_sweep_value(base, "bo", "3");
  CHECK(swept.mac.bo == 3);
  CHECK(base.mac.bo == 5);  // base untouched

  auto sized = runner::apply_sweep_value(base, "sbp_size_bytes", "42");
  CHECK(sized.scheme.sbp_size_bytes == 42);

  // Sweeping the minimum interval replaces, not duplicates, a configured one.
  RunConfig pinned = compact_chain_scenario();
  apply_key(pinned, "rpl.imin", "20000");
  auto replaced = runner::apply_sweep_value(pinned, "imin", "40000");
  CHECK(replaced.scheme.imin_override == Tick{40000});
}

}  // TEST_SUITE
