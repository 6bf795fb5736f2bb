// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/coupling.hpp"

#include <stdexcept>

namespace beaconsim::coupling {

Tick auto_imin(const mac154::SuperframeConfig& sf) {
  if (sf.bi <= sf.sd)
    throw std::invalid_argument(
        "imin auto-derivation needs an inactive period (SO < BO)");
  return sf.bi - sf.sd;
}

Tick resolve_scan_duration(const SchemeConfig& cfg, const mac154::SuperframeConfig& sf) {
  if (cfg.scan_override) {
    if (*cfg.scan_override <= 0) throw std::invalid_argument("scan duration must be positive");
    return *cfg.scan_override;
  }
  return sf.bi;
}

Tick resolve_imin(const SchemeConfig& cfg, const mac154::SuperframeConfig& sf) {
  if (cfg.imin_override) {
    if (*cfg.imin_override <= 0) throw std::invalid_argument("imin must be positive");
    return *cfg.imin_override;
  }
  return auto_imin(sf);
}

mac154::BeaconPayload beacon_payload(Scheme scheme, int sbp_size_bytes, int sbp_rank,
                                     std::optional<PendingDio>& pending,
                                     int capacity_bytes) {
  if (scheme == Scheme::EveryBeacon) {
    if (sbp_size_bytes < 1) throw std::invalid_argument("blob size must be >= 1");
    return mac154::SbpBlob{sbp_size_bytes, sbp_rank};
  }
  if (pending && pending->dio.size_bytes <= capacity_bytes) {
    rpl::Dio dio = pending->dio;
    pending.reset();
    return dio;
  }
  return std::monostate{};  // an oversized DIO stays pending for the next beacon
}

bool should_solicit(bool first_beacon_from_coordinator, bool beacon_has_dio) {
  return first_beacon_from_coordinator && !beacon_has_dio;
}

}  // namespace beaconsim::coupling
