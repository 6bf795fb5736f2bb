// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace beaconsim::rpl {

/// DODAG Information Object as carried in beacon payloads. Only the fields
/// the topology logic consumes are modeled; size_bytes stands in for the
/// full on-air encoding.
struct Dio {
  int dodag_id = 0;
  int version = 0;
  int rank = 0;
  int size_bytes = 84;
};

}  // namespace beaconsim::rpl
