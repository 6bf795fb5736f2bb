// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/rpl.hpp"
#include "doctest.h"

using namespace beaconsim;
using namespace beaconsim::rpl;

namespace {
RplConfig config() {
  RplConfig c;
  c.min_hop_rank_increase = 256;
  c.root_rank = 256;
  return c;
}

Dio dio(int rank, int version = 0) {
  Dio d;
  d.rank = rank;
  d.version = version;
  return d;
}
}  // namespace

TEST_SUITE("rpl") {

TEST_CASE("first advertisement sets parent and rank") {
  RplNodeState st;
  st.role = RplRole::Router;
  auto out = process_dio(st, dio(256), 7, config());
  CHECK(st.preferred_parent == NodeId(7));
  CHECK(st.rank == 512);
  CHECK(out.rank_changed);
  CHECK(out.parent_changed);
  CHECK_FALSE(out.consistent);
}

TEST_CASE("a lower advertised rank wins the parent slot") {
  RplNodeState st;
  st.role = RplRole::Router;
  process_dio(st, dio(768), 3, config());
  REQUIRE(st.rank == 1024);
  auto out = process_dio(st, dio(256), 9, config());
  CHECK(st.preferred_parent == NodeId(9));
  CHECK(st.rank == 512);
  CHECK(out.parent_changed);
  CHECK(out.rank_changed);
}

TEST_CASE("equal ranks tie toward the lower node id") {
  RplNodeState st;
  st.role = RplRole::Router;
  process_dio(st, dio(256), 9, config());
  auto out = process_dio(st, dio(256), 3, config());
  CHECK(st.preferred_parent == NodeId(3));
  CHECK(st.rank == 512);
  CHECK_FALSE(out.rank_changed);
  CHECK(out.parent_changed);
}

TEST_CASE("repeating the same advertisement is consistent and changes nothing") {
  RplNodeState st;
  st.role = RplRole::Router;
  process_dio(st, dio(256), 7, config());
  auto out = process_dio(st, dio(256), 7, config());
  CHECK(out.consistent);
  CHECK_FALSE(out.rank_changed);
  CHECK_FALSE(out.parent_changed);
}

TEST_CASE("neighbors at or above our own rank are never selected") {
  RplNodeState st;
  st.role = RplRole::Router;
  process_dio(st, dio(256), 7, config());
  REQUIRE(st.rank == 512);
  auto out = process_dio(st, dio(512), 8, config());  // equal to our rank
  CHECK(st.preferred_parent == NodeId(7));
  CHECK(st.rank == 512);
  CHECK_FALSE(out.parent_changed);
  CHECK(st.parent_set.count(8) == 1);  // still remembered
}

TEST_CASE("a worsened parent is kept while no candidate improves on our rank") {
  RplNodeState st;
  st.role = RplRole::Router;
  process_dio(st, dio(256), 7, config());
  process_dio(st, dio(512), 8, config());
  auto out = process_dio(st, dio(768), 7, config());  // old parent got worse
  CHECK(st.preferred_parent == NodeId(7));  // 8 advertises our own rank: not adoptable
  CHECK(st.rank == 512);
  CHECK_FALSE(out.parent_changed);
  CHECK_FALSE(out.rank_changed);
}

TEST_CASE("solicitations reset routers but not leaves") {
  RplNodeState router;
  router.role = RplRole::Router;
  CHECK(process_dis(router));
  RplNodeState root;
  root.role = RplRole::Root;
  CHECK(process_dis(root));
  RplNodeState leaf;
  leaf.role = RplRole::Leaf;
  CHECK_FALSE(process_dis(leaf));
}

}  // TEST_SUITE
