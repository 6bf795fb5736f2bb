// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/network.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace beaconsim::sim {

using engine::Engine;
using engine::Topology;
using mac154::Frame;
using mac154::FrameKind;

namespace {
constexpr Tick kWakeTimeoutSlackTicks = 32;

Tick next_after(Tick ref, Tick now, Tick period) {
  // smallest ref + k*period strictly greater than now, k >= 0
  if (ref > now) return ref;
  Tick k = (now - ref) / period + 1;
  return ref + k * period;
}

Tick first_phase_at(Tick offset, Tick from, Tick period) {
  // smallest t >= from with (t - offset) % period == 0
  if (offset >= from) return offset;
  Tick k = (from - offset + period - 1) / period;
  return offset + k * period;
}
}  // namespace

// radio listening reasons; the radio is in rx while any reason is held and
// the node is not transmitting
enum class Reason { Scan, OwnCap, ParentCap, WakeWindow, Handshake };

enum class Phase { Idle, Scanning, Step4Wait, AssocPending, Associated };

enum class WakeKind { Step4, AssocStart, Track };

enum class HsStage { Idle, AwaitAck, WaitResp, AwaitReply, FinalAck };

struct Network::Node {
  engine::NodeSpec spec;

  Phase phase = Phase::Idle;
  std::optional<NodeId> mac_parent;
  std::optional<NodeId> chosen_parent;
  std::optional<Tick> assoc_tick;
  int assoc_retries = 0;
  int scan_count = 0;

  // coordinator side
  bool beaconing = false;
  Tick beacon_offset = 0;
  std::optional<coupling::PendingDio> pending;
  std::vector<Tick> unresolved_br;  // delivered beacon requests awaiting the next beacon
  std::set<NodeId> children;

  rpl::RplNodeState rpl;
  int sbp_rank = rpl::kInfiniteRank;  // metric carried by the baseline blob

  struct Discovered {
    bool seen = false;
    Tick last_start = 0;
    Tick last_end = 0;
    bool solicited = false;
    bool payload_received = false;  // DIO processed / blob rank recorded
    int advertised_rank = rpl::kInfiniteRank;
    bool awaiting_step4 = false;
  };
  std::map<NodeId, Discovered> discovered;
  std::optional<Tick> scan_anchor_delivery;
  std::uint64_t scan_generation = 0;
  int step4_outstanding = 0;

  struct Wake {
    std::uint64_t seq = 0;
    WakeKind kind = WakeKind::Track;
    Tick expected = 0;
    bool open = false;
  };
  std::map<NodeId, Wake> wakes;

  struct Handshake {
    std::uint64_t seq = 0;
    HsStage stage = HsStage::Idle;
    Tick cap_end = 0;
  } hs;
  Tick parent_sched_ref = 0;  // a known beacon start of the chosen parent

  std::map<Reason, int> reasons;  // counted: overlapping windows stack
  Tick tx_until = 0;

  bool is_pan() const { return spec.role == Role::PanCoordinator; }
};

struct Network::Impl {
  Engine& eng;
  const Topology& topo;
  RunParams p;
  metrics::RadioLedger radio;
  mac154::Medium medium;
  mac154::BeaconOffsetAllocator alloc;
  std::map<NodeId, Node> nodes;

  std::vector<DioDeparture> dio_departures;
  std::vector<BeaconRequestOutcome> br_outcomes;
  std::vector<RunResult::RxRecord> rx_log;
  std::vector<std::string> notes;

  int expected_joiners = 0;
  int joined = 0;
  std::optional<Tick> convergence_tick;

  Tick max_beacon_air = 0;

  Impl(Engine& e, const Topology& t, const RunParams& params)
      : eng(e),
        topo(t),
        p(params),
        medium(e, t, radio, params.mac.phy_overhead_bytes),
        alloc(params.sf) {
    max_beacon_air = 2 * static_cast<Tick>(p.mac.phy_overhead_bytes + mac154::kMaxMacFrameBytes);
    for (const auto& spec : topo.nodes()) {
      Node n;
      n.spec = spec;
      nodes.emplace(spec.id, std::move(n));
      if (spec.role != Role::PanCoordinator) ++expected_joiners;
    }
    medium.set_delivery_handler([this](NodeId rx, const Frame& f, Tick s, Tick e) {
      on_delivered(rx, f, s, e);
    });
  }

  Node& node(NodeId id) { return nodes.at(id); }
  Tick now() const { return eng.now(); }
  bool proposed() const { return p.scheme.scheme == coupling::Scheme::TrickleGated; }

  void trace(NodeId id, std::string_view kind, const std::string& detail) {
    eng.trace(id, kind, detail);
  }

  // ---- radio state plumbing ----

  void update_radio(Node& n) {
    metrics::RadioState s = now() < n.tx_until ? metrics::RadioState::Tx
                            : !n.reasons.empty() ? metrics::RadioState::Rx
                                                 : metrics::RadioState::Sleep;
    radio.transition(n.spec.id, s, now());
  }

  void add_reason(Node& n, Reason r) {
    if (++n.reasons[r] == 1) update_radio(n);
  }

  void remove_reason(Node& n, Reason r) {
    auto it = n.reasons.find(r);
    if (it == n.reasons.end()) throw std::logic_error("releasing a reason never held");
    if (--it->second == 0) {
      n.reasons.erase(it);
      update_radio(n);
    }
  }

  Tick node_transmit(Node& n, const Frame& f) {
    if (now() < n.tx_until) throw std::logic_error("node already transmitting");
    Tick end = medium.transmit(f);
    n.tx_until = end;
    update_radio(n);
    NodeId id = n.spec.id;
    eng.at(end, [this, id] {
      Node& m = node(id);
      if (now() >= m.tx_until) update_radio(m);
    });
    return end;
  }

  // ---- boot & scanning ----

  void start() {
    for (auto& [id, n] : nodes) {
      NodeId nid = id;
      eng.at(n.spec.boot_time, [this, nid] { boot(nid); });
    }
  }

  void boot(NodeId id) {
    Node& n = node(id);
    switch (n.spec.role) {
      case Role::PanCoordinator: {
        n.rpl.role = rpl::RplRole::Root;
        n.rpl.rank = p.rpl.root_rank;
        n.sbp_rank = p.rpl.root_rank;
        n.phase = Phase::Associated;
        n.beacon_offset = alloc.assign(id, std::nullopt);
        n.beaconing = true;
        ensure_trickle(n);
        Tick t0 = first_phase_at(n.beacon_offset, now(), p.sf.bi);
        eng.at(t0, [this, id] { emit_beacon(id); });
        trace(id, "boot", "pan");
        break;
      }
      case Role::Ffd:
        n.rpl.role = rpl::RplRole::Router;
        trace(id, "boot", "ffd");
        start_scan(n);
        break;
      case Role::Rfd:
        n.rpl.role = rpl::RplRole::Leaf;
        trace(id, "boot", "rfd");
        start_scan(n);
        break;
    }
  }

  void start_scan(Node& n) {
    n.phase = Phase::Scanning;
    ++n.scan_count;
    ++n.scan_generation;
    n.discovered.clear();
    n.scan_anchor_delivery.reset();
    n.step4_outstanding = 0;
    n.chosen_parent.reset();
    n.hs.seq++;
    n.hs.stage = HsStage::Idle;
    add_reason(n, Reason::Scan);
    trace(n.spec.id, "scan-start", std::to_string(n.scan_count));
    // the listening window is re-anchored on the first heard beacon; when
    // nothing at all arrives, give up and retry after a desynchronizing pause
    NodeId id = n.spec.id;
    std::uint64_t gen = n.scan_generation;
    eng.at(now() + p.scan_duration, [this, id, gen] {
      Node& m = node(id);
      if (m.phase != Phase::Scanning || m.scan_generation != gen) return;
      if (m.scan_anchor_delivery) return;  // anchored; scan_end will handle it
      remove_reason(m, Reason::Scan);
      m.phase = Phase::Idle;
      trace(id, "scan-empty", "nothing heard");
      Tick pause = eng.rng().uniform(0, p.sf.bi);
      eng.after(pause, [this, id] {
        Node& m2 = node(id);
        if (m2.phase == Phase::Idle) start_scan(m2);
      });
    });
  }

  void scan_end(NodeId id, std::uint64_t gen) {
    Node& n = node(id);
    if (n.phase != Phase::Scanning || gen != n.scan_generation) return;
    n.phase = Phase::Step4Wait;
    trace(id, "scan-end", std::to_string(n.discovered.size()) + " discovered");
    // plan wakes before dropping the scan reason so the radio never blips off
    for (auto& [c, d] : n.discovered) {
      if (d.payload_received) continue;
      // wait for this coordinator's next beacon; a beacon already in the air
      // at this instant still counts (the window opens retroactively-now)
      Tick e = d.last_start + p.sf.bi;
      while (e + max_beacon_air + kWakeTimeoutSlackTicks <= now()) e += p.sf.bi;
      d.awaiting_step4 = true;
      ++n.step4_outstanding;
      schedule_beacon_wake(n, c, e, WakeKind::Step4);
    }
    remove_reason(n, Reason::Scan);
    if (n.step4_outstanding == 0) select_parent(n);
  }

  // ---- wake windows ----

  void schedule_beacon_wake(Node& n, NodeId c, Tick expected, WakeKind kind) {
    auto& w = n.wakes[c];
    if (w.open) {  // replace a stale open window
      w.open = false;
      remove_reason(n, Reason::WakeWindow);
    }
    ++w.seq;
    w.kind = kind;
    w.expected = expected;
    NodeId id = n.spec.id;
    std::uint64_t s = w.seq;
    Tick open_at = expected - p.mac.wake_guard_ticks;
    if (open_at <= now())
      open_wake(id, c, s);
    else
      eng.at(open_at, [this, id, c, s] { open_wake(id, c, s); });
  }

  void open_wake(NodeId id, NodeId c, std::uint64_t s) {
    Node& n = node(id);
    auto it = n.wakes.find(c);
    if (it == n.wakes.end() || it->second.seq != s) return;
    it->second.open = true;
    add_reason(n, Reason::WakeWindow);
    Tick deadline = std::max(now(), it->second.expected + max_beacon_air + kWakeTimeoutSlackTicks);
    eng.at(deadline, [this, id, c, s] { wake_timeout(id, c, s); });
  }

  void close_wake(Node& n, Node::Wake& w) {
    w.open = false;
    ++w.seq;  // cancels the pending timeout
    remove_reason(n, Reason::WakeWindow);
  }

  void wake_timeout(NodeId id, NodeId c, std::uint64_t s) {
    Node& n = node(id);
    auto it = n.wakes.find(c);
    if (it == n.wakes.end() || it->second.seq != s || !it->second.open) return;
    WakeKind kind = it->second.kind;
    Tick expected = it->second.expected;
    close_wake(n, it->second);
    trace(id, "wake-miss", "coordinator " + std::to_string(c));
    switch (kind) {
      case WakeKind::Step4: step4_resolved(n, c, false); break;
      case WakeKind::Track:
        if (n.phase == Phase::Associated)
          schedule_beacon_wake(n, c, expected + p.sf.bi, WakeKind::Track);
        break;
      case WakeKind::AssocStart:
        if (n.phase == Phase::AssocPending)
          schedule_beacon_wake(n, c, expected + p.sf.bi, WakeKind::AssocStart);
        break;
    }
  }

  void step4_resolved(Node& n, NodeId c, bool got_payload) {
    auto it = n.discovered.find(c);
    if (it == n.discovered.end() || !it->second.awaiting_step4) return;
    it->second.awaiting_step4 = false;
    if (got_payload) it->second.payload_received = true;
    --n.step4_outstanding;
    if (n.step4_outstanding == 0 && n.phase == Phase::Step4Wait) select_parent(n);
  }

  // ---- parent selection & association ----

  void select_parent(Node& n) {
    std::optional<NodeId> best;
    int best_rank = rpl::kInfiniteRank;
    for (const auto& [c, d] : n.discovered) {
      if (!d.payload_received) continue;
      if (d.advertised_rank < best_rank || (d.advertised_rank == best_rank && (!best || c < *best))) {
        best = c;
        best_rank = d.advertised_rank;
      }
    }
    if (!best) {
      trace(n.spec.id, "rescan", "no parent candidate");
      start_scan(n);
      return;
    }
    n.chosen_parent = best;
    n.parent_sched_ref = n.discovered.at(*best).last_start;
    if (!proposed()) n.sbp_rank = best_rank + p.rpl.min_hop_rank_increase;
    n.phase = Phase::AssocPending;
    n.assoc_retries = 0;
    trace(n.spec.id, "parent-select",
          "coordinator " + std::to_string(*best) + " rank " + std::to_string(best_rank));

    if (p.scheme.assoc_policy == coupling::AssocPolicy::Immediate) {
      Tick ref = n.parent_sched_ref;
      Tick b = ref + (now() - ref) / p.sf.bi * p.sf.bi;  // latest parent beacon start <= now
      Tick remaining = b + p.sf.sd - now();
      if (now() >= b && remaining >= mac154::kMinCapRemainingTicks) {
        begin_handshake(n, b + p.sf.sd);
        return;
      }
    }
    schedule_beacon_wake(n, *best, next_after(n.parent_sched_ref, now(), p.sf.bi),
                         WakeKind::AssocStart);
  }

  void begin_handshake(Node& n, Tick cap_end) {
    ++n.hs.seq;
    n.hs.stage = HsStage::Idle;
    n.hs.cap_end = cap_end;
    add_reason(n, Reason::Handshake);
    send_assoc_request(n);
  }

  Frame command_frame(FrameKind kind, NodeId src, NodeId dst, int total_bytes) {
    Frame f;
    f.kind = kind;
    f.src = src;
    f.dst = dst;
    f.header_bytes = total_bytes;
    f.payload_bytes = 0;
    return f;
  }

  Tick ack_air() const { return 2 * static_cast<Tick>(p.mac.phy_overhead_bytes + p.mac.ack_bytes); }

  void send_assoc_request(Node& n) {
    NodeId id = n.spec.id;
    std::uint64_t s = n.hs.seq;
    Frame f = command_frame(FrameKind::AssociationRequest, id, *n.chosen_parent,
                            p.mac.assoc_request_bytes);
    csma_send(
        n, f, n.hs.cap_end, mac154::kAckTurnaroundTicks + ack_air() + 16,
        [this, id, s] {  // still valid?
          Node& m = node(id);
          return m.phase == Phase::AssocPending && m.hs.seq == s;
        },
        [this, id, s](Tick end) {  // sent
          Node& m = node(id);
          m.hs.stage = HsStage::AwaitAck;
          eng.at(end + mac154::kAckWaitTicks, [this, id, s] {
            Node& m2 = node(id);
            if (m2.hs.seq == s && m2.hs.stage == HsStage::AwaitAck) retry_handshake(m2);
          });
        },
        [this, id, s] {  // channel failure / cap overrun
          Node& m = node(id);
          if (m.hs.seq == s) retry_handshake(m);
        });
  }

  void on_assoc_ack(Node& n) {
    n.hs.stage = HsStage::WaitResp;
    NodeId id = n.spec.id;
    std::uint64_t s = n.hs.seq;
    Tick dreq_air = 2 * static_cast<Tick>(p.mac.phy_overhead_bytes + p.mac.data_request_bytes);
    Tick reply_air = 2 * static_cast<Tick>(p.mac.phy_overhead_bytes + p.mac.assoc_reply_bytes);
    Tick t = now() + mac154::kResponseWaitTicks;
    Tick need = dreq_air + mac154::kAckTurnaroundTicks + reply_air +
                mac154::kAckTurnaroundTicks + ack_air() + 32;
    if (t + need > n.hs.cap_end) {
      defer_handshake(n);  // redo the exchange next beacon; not a failed attempt
      return;
    }
    eng.at(t, [this, id, s] {
      Node& m = node(id);
      if (m.hs.seq == s && m.hs.stage == HsStage::WaitResp) send_data_request(m);
    });
  }

  void send_data_request(Node& n) {
    NodeId id = n.spec.id;
    std::uint64_t s = n.hs.seq;
    Tick reply_air = 2 * static_cast<Tick>(p.mac.phy_overhead_bytes + p.mac.assoc_reply_bytes);
    Frame f = command_frame(FrameKind::DataRequest, id, *n.chosen_parent, p.mac.data_request_bytes);
    csma_send(
        n, f, n.hs.cap_end,
        mac154::kAckTurnaroundTicks + reply_air + mac154::kAckTurnaroundTicks + ack_air() + 24,
        [this, id, s] {
          Node& m = node(id);
          return m.phase == Phase::AssocPending && m.hs.seq == s;
        },
        [this, id, s, reply_air](Tick end) {
          Node& m = node(id);
          m.hs.stage = HsStage::AwaitReply;
          Tick deadline = end + mac154::kAckTurnaroundTicks + reply_air + 64;
          eng.at(deadline, [this, id, s] {
            Node& m2 = node(id);
            if (m2.hs.seq == s && m2.hs.stage == HsStage::AwaitReply) retry_handshake(m2);
          });
        },
        [this, id, s] {
          Node& m = node(id);
          if (m.hs.seq == s) retry_handshake(m);
        });
  }

  void on_assoc_reply(Node& n) {
    n.hs.stage = HsStage::FinalAck;
    NodeId id = n.spec.id;
    std::uint64_t s = n.hs.seq;
    eng.at(now() + mac154::kAckTurnaroundTicks, [this, id, s] {
      Node& m = node(id);
      if (m.hs.seq != s || m.hs.stage != HsStage::FinalAck) return;
      Frame ack = command_frame(FrameKind::Ack, id, *m.chosen_parent, p.mac.ack_bytes);
      Tick end = node_transmit(m, ack);
      eng.at(end, [this, id, s] {
        Node& m2 = node(id);
        if (m2.hs.seq == s && m2.hs.stage == HsStage::FinalAck) complete_association(m2);
      });
    });
  }

  void defer_handshake(Node& n) {
    ++n.hs.seq;
    n.hs.stage = HsStage::Idle;
    remove_reason(n, Reason::Handshake);
    trace(n.spec.id, "assoc-defer", "cap exhausted");
    schedule_beacon_wake(n, *n.chosen_parent, next_after(n.parent_sched_ref, now(), p.sf.bi),
                         WakeKind::AssocStart);
  }

  void retry_handshake(Node& n) {
    ++n.hs.seq;
    n.hs.stage = HsStage::Idle;
    remove_reason(n, Reason::Handshake);
    if (++n.assoc_retries > p.mac.assoc_retry_limit) {
      trace(n.spec.id, "assoc-giveup", "rescanning");
      n.phase = Phase::Idle;
      start_scan(n);
      return;
    }
    trace(n.spec.id, "assoc-retry", std::to_string(n.assoc_retries));
    schedule_beacon_wake(n, *n.chosen_parent, next_after(n.parent_sched_ref, now(), p.sf.bi),
                         WakeKind::AssocStart);
  }

  void complete_association(Node& n) {
    ++n.hs.seq;
    n.hs.stage = HsStage::Idle;
    remove_reason(n, Reason::Handshake);
    n.phase = Phase::Associated;
    n.mac_parent = n.chosen_parent;
    n.assoc_tick = now();
    trace(n.spec.id, "associated", "coordinator " + std::to_string(*n.mac_parent));

    if (n.rpl.role == rpl::RplRole::Router) {
      n.beacon_offset = alloc.assign(n.spec.id, *n.mac_parent);
      n.beaconing = true;
      NodeId id = n.spec.id;
      Tick t0 = first_phase_at(n.beacon_offset, now(), p.sf.bi);
      eng.at(t0, [this, id] { emit_beacon(id); });
      start_parent_cap_cycle(n);
    } else {
      schedule_beacon_wake(n, *n.mac_parent, next_after(n.parent_sched_ref, now(), p.sf.bi),
                           WakeKind::Track);
    }

    ++joined;
    if (joined == expected_joiners && !convergence_tick) {
      convergence_tick = now();
      trace(n.spec.id, "converged", "tick " + std::to_string(now()));
      if (p.until_converged) {
        Tick stop_at = now() + p.steady_ticks;
        eng.at(stop_at, [this] { eng.stop(); });
      }
    }
  }

  // A coordinator keeps listening through its parent's whole active period
  // (synchronization beacons and DIO payloads arrive there).
  void start_parent_cap_cycle(Node& n) {
    NodeId id = n.spec.id;
    Tick open_at = next_after(n.parent_sched_ref, now() + p.mac.wake_guard_ticks, p.sf.bi) -
                   p.mac.wake_guard_ticks;
    eng.at(open_at, [this, id] { parent_cap_open(id); });
  }

  void parent_cap_open(NodeId id) {
    Node& n = node(id);
    add_reason(n, Reason::ParentCap);
    Tick span = p.mac.wake_guard_ticks + p.sf.sd;
    eng.at(now() + span, [this, id] { remove_reason(node(id), Reason::ParentCap); });
    eng.at(now() + p.sf.bi, [this, id] { parent_cap_open(id); });
  }

  // ---- csma ----

  void csma_send(Node& n, Frame frame, Tick cap_end, Tick need_tail,
                 std::function<bool()> still_valid, std::function<void(Tick)> on_sent,
                 std::function<void()> on_fail) {
    csma_step(n.spec.id, std::move(frame), cap_end, need_tail, 0, mac154::kMacMinBe,
              std::move(still_valid), std::move(on_sent), std::move(on_fail));
  }

  void csma_step(NodeId id, Frame frame, Tick cap_end, Tick need_tail, int nb, int be,
                 std::function<bool()> still_valid, std::function<void(Tick)> on_sent,
                 std::function<void()> on_fail) {
    Tick backoff = eng.rng().uniform(0, Tick{1} << be) * mac154::kBackoffUnitTicks;
    eng.at(now() + backoff, [this, id, frame = std::move(frame), cap_end, need_tail, nb, be,
                             still_valid = std::move(still_valid), on_sent = std::move(on_sent),
                             on_fail = std::move(on_fail)]() mutable {
      if (!still_valid()) return;
      Node& n = node(id);
      Tick air = mac154::frame_duration(frame, p.mac.phy_overhead_bytes);
      if (now() + air + need_tail > cap_end) {
        on_fail();
        return;
      }
      if (medium.channel_busy(id)) {
        int nb2 = nb + 1;
        if (nb2 >= mac154::kMaxCsmaAttempts) {
          trace(id, "csma-fail", mac154::frame_kind_name(frame.kind));
          on_fail();
          return;
        }
        csma_step(id, std::move(frame), cap_end, need_tail, nb2,
                  std::min(be + 1, mac154::kMacMaxBe), std::move(still_valid),
                  std::move(on_sent), std::move(on_fail));
        return;
      }
      Tick end = node_transmit(n, frame);
      on_sent(end);
    });
  }

  // ---- trickle & beacons ----

  void ensure_trickle(Node& n) {
    if (!proposed()) return;
    if (n.rpl.trickle_running) return;
    if (n.rpl.role == rpl::RplRole::Leaf) return;
    if (n.rpl.rank == rpl::kInfiniteRank) return;
    n.rpl.trickle = rpl::trickle_start(p.rpl.trickle, now(), eng.rng());
    n.rpl.trickle_running = true;
    arm_trickle(n);
  }

  void arm_trickle(Node& n) {
    NodeId id = n.spec.id;
    std::uint64_t gen = n.rpl.trickle.generation;
    eng.at(n.rpl.trickle.t, [this, id, gen] {
      Node& m = node(id);
      if (!m.rpl.trickle_running || m.rpl.trickle.generation != gen) return;
      handle_trickle_fire(m);
    });
  }

  void handle_trickle_fire(Node& n) {
    Tick fire_tick = now();
    auto fire = rpl::trickle_on_expire(n.rpl.trickle, eng.rng());
    if (fire.emit) {
      rpl::Dio dio;
      dio.rank = n.rpl.rank;
      dio.size_bytes = p.rpl.dio_size_bytes;
      n.pending = coupling::PendingDio{dio, fire_tick, fire_tick, fire.fired_cause};
      if (eng.tracing())
        trace(n.spec.id, "trickle-fire",
              std::string("emit cause=") + rpl::reset_cause_name(fire.fired_cause));
    }
    arm_trickle(n);
  }

  void poll_trickle(Node& n) {
    if (n.rpl.trickle_running && n.rpl.trickle.t <= now()) handle_trickle_fire(n);
  }

  void emit_beacon(NodeId id) {
    Node& n = node(id);
    if (!n.beaconing) return;
    // a firing scheduled for this very tick must land in this beacon
    poll_trickle(n);

    std::optional<coupling::PendingDio> staged = n.pending;
    int capacity = mac154::kMaxMacFrameBytes - p.mac.empty_beacon_bytes;
    mac154::BeaconPayload payload = coupling::beacon_payload(
        p.scheme.scheme, p.scheme.sbp_size_bytes, n.sbp_rank, n.pending, capacity);
    bool has_dio = std::holds_alternative<rpl::Dio>(payload);
    if (staged && !n.pending && has_dio)
      dio_departures.push_back(
          DioDeparture{id, staged->fire_tick, now(), staged->interval_cause});

    for (Tick req : n.unresolved_br)
      br_outcomes.push_back(BeaconRequestOutcome{id, req, true, has_dio});
    n.unresolved_br.clear();

    Frame f;
    f.kind = FrameKind::Beacon;
    f.src = id;
    f.dst = kBroadcast;
    f.header_bytes = p.mac.empty_beacon_bytes;
    if (has_dio)
      f.payload_bytes = std::get<rpl::Dio>(payload).size_bytes;
    else if (std::holds_alternative<mac154::SbpBlob>(payload))
      f.payload_bytes = std::get<mac154::SbpBlob>(payload).size_bytes;
    f.payload = payload;
    node_transmit(n, f);

    add_reason(n, Reason::OwnCap);
    eng.at(now() + p.sf.sd, [this, id] { remove_reason(node(id), Reason::OwnCap); });
    eng.at(now() + p.sf.bi, [this, id] { emit_beacon(id); });
  }

  // ---- deliveries ----

  void on_delivered(NodeId rx, const Frame& f, Tick start, Tick end) {
    Node& n = node(rx);
    bool addressed = f.dst == kBroadcast || f.dst == rx;
    if (!addressed) return;
    rx_log.push_back(RunResult::RxRecord{rx, end, f.mac_bytes()});
    switch (f.kind) {
      case FrameKind::Beacon: on_beacon(n, f, start, end); break;
      case FrameKind::BeaconRequest: on_beacon_request(n, f); break;
      case FrameKind::AssociationRequest: on_assoc_request_rx(n, f); break;
      case FrameKind::DataRequest: on_data_request_rx(n, f); break;
      case FrameKind::AssociationReply:
        if (n.phase == Phase::AssocPending && n.hs.stage == HsStage::AwaitReply &&
            f.src == *n.chosen_parent)
          on_assoc_reply(n);
        break;
      case FrameKind::Ack: on_ack_rx(n, f); break;
    }
  }

  void on_beacon(Node& n, const Frame& f, Tick start, Tick end) {
    NodeId c = f.src;
    bool has_dio = std::holds_alternative<rpl::Dio>(f.payload);
    const mac154::SbpBlob* blob = std::get_if<mac154::SbpBlob>(&f.payload);

    // routing layer sees every received DIO, whatever the MAC is doing
    if (has_dio && n.rpl.role != rpl::RplRole::Root) {
      auto out = rpl::process_dio(n.rpl, std::get<rpl::Dio>(f.payload), c, p.rpl);
      if (n.rpl.trickle_running) {
        if (out.consistent)
          ++n.rpl.trickle.c;
        else if (out.rank_changed || out.parent_changed) {
          rpl::trickle_reset(n.rpl.trickle, now(), rpl::ResetCause::Inconsistency, eng.rng());
          arm_trickle(n);
        }
      }
      ensure_trickle(n);
    }

    int advertised = has_dio ? std::get<rpl::Dio>(f.payload).rank
                     : blob  ? blob->rank
                             : rpl::kInfiniteRank;
    bool has_payload = has_dio || blob != nullptr;

    // an open wake window for this coordinator takes the beacon first
    if (auto it = n.wakes.find(c); it != n.wakes.end() && it->second.open) {
      WakeKind kind = it->second.kind;
      close_wake(n, it->second);
      switch (kind) {
        case WakeKind::Step4: {
          auto dit = n.discovered.find(c);
          if (dit != n.discovered.end()) {
            dit->second.last_start = start;
            dit->second.last_end = end;
            if (has_payload) dit->second.advertised_rank = advertised;
          }
          step4_resolved(n, c, has_payload);
          break;
        }
        case WakeKind::Track:
          if (n.phase == Phase::Associated) schedule_beacon_wake(n, c, start + p.sf.bi, WakeKind::Track);
          break;
        case WakeKind::AssocStart:
          if (n.phase == Phase::AssocPending && c == *n.chosen_parent) {
            n.parent_sched_ref = start;
            begin_handshake(n, start + p.sf.sd);
          }
          break;
      }
      return;
    }

    if (n.phase == Phase::Scanning) {
      auto& d = n.discovered[c];
      bool first = !d.seen;
      d.seen = true;
      d.last_start = start;
      d.last_end = end;
      if (has_payload) {
        d.payload_received = true;
        d.advertised_rank = advertised;
      }
      if (!n.scan_anchor_delivery) {
        n.scan_anchor_delivery = end;
        std::uint64_t gen = n.scan_generation;
        NodeId id = n.spec.id;
        eng.at(end + p.scan_duration, [this, id, gen] { scan_end(id, gen); });
        trace(n.spec.id, "scan-anchor", "coordinator " + std::to_string(c));
      }
      if (proposed() && coupling::should_solicit(first, has_dio)) {
        d.solicited = true;
        send_beacon_request(n, c, start);
      }
      return;
    }

    if (n.phase == Phase::Associated && n.mac_parent && c == *n.mac_parent)
      n.parent_sched_ref = start;
  }

  void send_beacon_request(Node& n, NodeId c, Tick beacon_start) {
    NodeId id = n.spec.id;
    std::uint64_t gen = n.scan_generation;
    Frame f = command_frame(FrameKind::BeaconRequest, id, kBroadcast, mac154::kBeaconRequestBytes);
    trace(id, "solicit", "coordinator " + std::to_string(c));
    csma_send(
        n, f, beacon_start + p.sf.sd, 0,
        [this, id, gen] {
          Node& m = node(id);
          return m.phase == Phase::Scanning && m.scan_generation == gen;
        },
        [](Tick) {},
        [this, id] { trace(id, "solicit-skip", "channel access failure"); });
  }

  void on_beacon_request(Node& n, const Frame&) {
    if (!proposed()) return;
    if (!n.beaconing || n.rpl.role == rpl::RplRole::Leaf) return;
    if (!n.rpl.trickle_running) return;
    rpl::trickle_reset(n.rpl.trickle, now(), rpl::ResetCause::BeaconRequest, eng.rng());
    arm_trickle(n);
    n.unresolved_br.push_back(now());
    trace(n.spec.id, "trickle-reset", "beacon request");
  }

  void on_assoc_request_rx(Node& n, const Frame& f) {
    if (!n.beaconing) return;
    NodeId id = n.spec.id;
    NodeId joiner = f.src;
    eng.at(now() + mac154::kAckTurnaroundTicks, [this, id, joiner] {
      Node& m = node(id);
      if (now() < m.tx_until) return;  // busy; the joiner will time out and retry
      node_transmit(m, command_frame(FrameKind::Ack, id, joiner, p.mac.ack_bytes));
    });
  }

  void on_data_request_rx(Node& n, const Frame& f) {
    if (!n.beaconing) return;
    NodeId id = n.spec.id;
    NodeId joiner = f.src;
    eng.at(now() + mac154::kAckTurnaroundTicks, [this, id, joiner] {
      Node& m = node(id);
      if (now() < m.tx_until) return;
      node_transmit(m,
                    command_frame(FrameKind::AssociationReply, id, joiner, p.mac.assoc_reply_bytes));
    });
  }

  void on_ack_rx(Node& n, const Frame& f) {
    if (n.phase == Phase::AssocPending && n.hs.stage == HsStage::AwaitAck &&
        f.src == *n.chosen_parent) {
      on_assoc_ack(n);
      return;
    }
    if (n.beaconing && n.children.count(f.src) == 0 && nodes.count(f.src) &&
        nodes.at(f.src).phase == Phase::AssocPending) {
      // final ack of the association exchange
      n.children.insert(f.src);
    }
  }

  // ---- results ----

  int hop_of(NodeId id) const {
    int hop = 0;
    NodeId cur = id;
    while (true) {
      const Node& n = nodes.at(cur);
      if (n.is_pan()) return hop;
      if (!n.mac_parent) return -1;
      cur = *n.mac_parent;
      if (++hop > static_cast<int>(nodes.size())) return -1;  // defensive
    }
  }

  RunResult finish() {
    radio.finalize(eng.now());
    for (auto& [id, n] : nodes) {  // requests still waiting when the run ended
      for (Tick req : n.unresolved_br)
        br_outcomes.push_back(BeaconRequestOutcome{id, req, false, false});
      n.unresolved_br.clear();
    }
    RunResult r;
    r.converged = convergence_tick.has_value();
    r.convergence_tick = convergence_tick.value_or(0);
    r.end_tick = eng.now();
    for (const auto& [id, n] : nodes) {
      NodeReport rep;
      rep.role = n.spec.role;
      rep.assoc_tick = n.assoc_tick;
      rep.parent = n.mac_parent;
      rep.scan_count = n.scan_count;
      rep.hop = (n.is_pan() || n.assoc_tick) ? hop_of(id) : -1;
      r.nodes.emplace(id, rep);

      if (proposed() && n.assoc_tick && !n.is_pan()) {
        if (!n.rpl.preferred_parent || *n.rpl.preferred_parent != *n.mac_parent)
          r.consistency_notes.push_back("node " + std::to_string(id) +
                                        ": coordinator differs from routing parent");
      }
      if (!proposed() && !n.rpl.parent_set.empty())
        r.consistency_notes.push_back("node " + std::to_string(id) +
                                      ": routing state touched under the baseline scheme");
    }
    r.dio_departures = std::move(dio_departures);
    r.br_outcomes = std::move(br_outcomes);
    r.radio = std::move(radio);
    r.tx_log = medium.tx_log();
    r.rx_log = std::move(rx_log);
    return r;
  }
};

Network::Network(Engine& eng, const Topology& topo, const RunParams& params)
    : impl_(new Impl(eng, topo, params)) {}

Network::~Network() { delete impl_; }

void Network::start() { impl_->start(); }

RunResult Network::finish() { return impl_->finish(); }

}  // namespace beaconsim::sim
