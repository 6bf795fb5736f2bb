// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/coupling.hpp"
#include "doctest.h"

using namespace beaconsim;
using namespace beaconsim::coupling;

TEST_SUITE("coupling") {

TEST_CASE("derived minimum interval is the inactive period") {
  CHECK(auto_imin(mac154::superframe_from(5, 2)) == 26880);  // 30720 - 3840
  CHECK(auto_imin(mac154::superframe_from(3, 2)) == 3840);   // 7680 - 3840
  CHECK_THROWS(auto_imin(mac154::superframe_from(4, 4)));    // no inactive period
}

TEST_CASE("scan and interval overrides take precedence over derivation") {
  auto sf = mac154::superframe_from(5, 2);
  SchemeConfig cfg;
  CHECK(resolve_scan_duration(cfg, sf) == 30720);
  CHECK(resolve_imin(cfg, sf) == 26880);

  cfg.scan_override = 4 * 30720;
  cfg.imin_override = 61440;
  CHECK(resolve_scan_duration(cfg, sf) == 122880);
  CHECK(resolve_imin(cfg, sf) == 61440);
}

TEST_CASE("gated payload embeds a pending advertisement once") {
  std::optional<PendingDio> pending = PendingDio{rpl::Dio{1, 0, 256, 84}, 1000, 900};
  auto p = beacon_payload(Scheme::TrickleGated, 28, 0, pending, 112);
  REQUIRE(std::holds_alternative<rpl::Dio>(p));
  CHECK(std::get<rpl::Dio>(p).rank == 256);
  CHECK(!pending.has_value());  // consumed by this beacon

  auto again = beacon_payload(Scheme::TrickleGated, 28, 0, pending, 112);
  CHECK(std::holds_alternative<std::monostate>(again));
}

TEST_CASE("gated payload defers when the frame cannot fit it") {
  std::optional<PendingDio> pending = PendingDio{rpl::Dio{1, 0, 512, 84}, 500, 400};
  auto p = beacon_payload(Scheme::TrickleGated, 28, 0, pending, 83);
  CHECK(std::holds_alternative<std::monostate>(p));
  REQUIRE(pending.has_value());  // stays queued for the next beacon
  CHECK(pending->dio.rank == 512);
}

TEST_CASE("baseline payload is a fixed blob in every beacon") {
  std::optional<PendingDio> pending;
  auto p = beacon_payload(Scheme::EveryBeacon, 28, 768, pending, 112);
  REQUIRE(std::holds_alternative<mac154::SbpBlob>(p));
  CHECK(std::get<mac154::SbpBlob>(p).size_bytes == 28);
  CHECK(std::get<mac154::SbpBlob>(p).rank == 768);

  // A pending advertisement is not consumed by the baseline scheme.
  pending = PendingDio{rpl::Dio{1, 0, 256, 84}, 0, 0};
  auto q = beacon_payload(Scheme::EveryBeacon, 42, 768, pending, 112);
  REQUIRE(std::holds_alternative<mac154::SbpBlob>(q));
  CHECK(std::get<mac154::SbpBlob>(q).size_bytes == 42);
  CHECK(pending.has_value());
}

TEST_CASE("solicitation happens once per coordinator and only without a payload") {
  CHECK(should_solicit(true, false));
  CHECK(!should_solicit(true, true));    // the beacon already answered the question
  CHECK(!should_solicit(false, false));  // already solicited this coordinator
  CHECK(!should_solicit(false, true));
}

TEST_CASE("scheme and policy names used in reports") {
  CHECK(std::string(scheme_name(Scheme::TrickleGated)) == "proposed");
  CHECK(std::string(scheme_name(Scheme::EveryBeacon)) == "sbp");
  CHECK(std::string(assoc_policy_name(AssocPolicy::NextBeacon)) == "next-beacon");
}

}  // TEST_SUITE
