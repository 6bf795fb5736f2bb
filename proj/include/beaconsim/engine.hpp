// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string_view>
#include <vector>

#include "beaconsim/rng.hpp"
#include "beaconsim/types.hpp"

namespace beaconsim::engine {

/// Deterministic discrete-event loop. Events fire in (time, insertion order);
/// scheduling into the past is a bug in the caller and throws. All randomness
/// in a run flows through the single Rng owned here, so a (scenario, seed)
/// pair replays tick for tick.
class Engine {
 public:
  explicit Engine(std::uint64_t seed) : rng_(seed) {}

  Tick now() const { return now_; }
  Rng& rng() { return rng_; }

  void at(Tick when, std::function<void()> fn);
  /// Schedules relative to now().
  void after(Tick delay, std::function<void()> fn) { at(now_ + delay, std::move(fn)); }

  /// Executes one event. Returns false when the queue is empty.
  bool step();

  /// Executes every event with fire time < end, then advances the clock to
  /// end. Returns early when stop() was called from inside an event.
  void run_until(Tick end);

  void stop() { stopped_ = true; }
  bool stopped() const { return stopped_; }
  std::size_t pending() const { return queue_.size(); }

  using TraceHook =
      std::function<void(Tick, NodeId, std::string_view, std::string_view)>;
  void set_trace(TraceHook hook) { trace_ = std::move(hook); }
  /// Callers building expensive detail strings should check tracing() first.
  bool tracing() const { return static_cast<bool>(trace_); }
  void trace(NodeId node, std::string_view kind, std::string_view detail) {
    if (trace_) trace_(now_, node, kind, detail);
  }

 private:
  struct Event {
    Tick when = 0;
    std::uint64_t seq = 0;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.when != b.when) return a.when > b.when;
      return a.seq > b.seq;
    }
  };

  Tick now_ = 0;
  std::uint64_t next_seq_ = 0;
  bool stopped_ = false;
  Rng rng_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  TraceHook trace_;
};

}  // namespace beaconsim::engine
