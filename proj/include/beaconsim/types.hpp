// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace beaconsim {

/// Simulation time in 802.15.4 symbol periods. One symbol is 16 us at
/// 250 kb/s, so one byte on air takes exactly 2 ticks. Using the symbol
/// as the tick keeps every superframe quantity integral.
using Tick = std::int64_t;

inline constexpr double kSecondsPerTick = 16e-6;
inline constexpr Tick kTicksPerSecond = 62500;

using NodeId = int;
inline constexpr NodeId kBroadcast = -1;

enum class Role { PanCoordinator, Ffd, Rfd };

inline const char* role_name(Role r) {
  switch (r) {
    case Role::PanCoordinator: return "pan";
    case Role::Ffd: return "ffd";
    case Role::Rfd: return "rfd";
  }
  return "?";
}

inline double ticks_to_seconds(Tick t) { return static_cast<double>(t) * kSecondsPerTick; }

}  // namespace beaconsim
