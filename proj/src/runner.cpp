// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>

#include "beaconsim/engine.hpp"
#include "beaconsim/rng.hpp"
#include "beaconsim/stats.hpp"

namespace beaconsim::runner {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string key_for_sweep_param(const std::string& param) {
  if (param == "bo") return "mac.bo";
  if (param == "so") return "mac.so";
  if (param == "sbp_size_bytes" || param == "sbp_size" || param == "sbp-size")
    return "coupling.sbp_size_bytes";
  if (param == "scan_duration" || param == "scan") return "coupling.scan_duration";
  if (param == "scheme") return "coupling.scheme";
  if (param == "imin") return "rpl.imin";
  throw scenario::ConfigError("unsupported sweep parameter '" + param + "'");
}

void append_window_metrics(RunOutput& out, Tick from, Tick to, const char* window) {
  const auto& r = out.result;
  std::map<NodeId, long long> rx_bytes;
  for (const auto& rx : r.rx_log)
    if (rx.tick >= from && rx.tick < to) rx_bytes[rx.receiver] += rx.mac_bytes;

  for (const auto& [id, rep] : r.nodes) {
    NodeMetrics m;
    m.node = id;
    m.role = rep.role;
    m.hop = rep.hop;
    m.window = window;
    m.tx_j = r.radio.energy_in_state(id, metrics::RadioState::Tx, from, to, out.energy);
    m.rx_j = r.radio.energy_in_state(id, metrics::RadioState::Rx, from, to, out.energy);
    m.tx_bytes = metrics::overhead_bytes(r.tx_log, from, to, id);
    auto it = rx_bytes.find(id);
    m.rx_bytes = it == rx_bytes.end() ? 0 : it->second;
    m.assoc_tick = rep.assoc_tick;
    out.node_metrics.push_back(std::move(m));
  }
}

}  // namespace

RunOutput run_one(const scenario::ResolvedRun& rr, std::uint64_t seed,
                  std::ostream* trace_out) {
  engine::Engine eng(seed);
  if (trace_out) {
    eng.set_trace([trace_out](Tick t, NodeId n, std::string_view kind,
                              std::string_view detail) {
      *trace_out << t << '\t' << n << '\t' << kind << '\t' << detail << '\n';
    });
  }
  // Per-seed deployment phase: each node's boot shifts by a seeded uniform
  // draw. The stream depends on the seed alone, so paired runs that differ
  // only in scheme or parameters see the same deployment.
  const engine::Topology* topo = &rr.topology;
  std::optional<engine::Topology> jittered;
  if (rr.params.boot_jitter > 0) {
    Rng jr(Rng::derive(seed, 0xb007));
    auto specs = rr.topology.nodes();
    for (auto& s : specs) s.boot_time += jr.uniform(0, rr.params.boot_jitter);
    jittered.emplace(std::move(specs), rr.topology.radio_range());
    topo = &*jittered;
  }
  sim::Network net(eng, *topo, rr.params);
  net.start();
  Tick horizon = rr.params.until_converged
                     ? rr.params.max_ticks
                     : std::min(rr.params.fixed_duration, rr.params.max_ticks);
  eng.run_until(horizon);

  RunOutput out;
  out.seed = seed;
  out.result = net.finish();
  out.construction_end =
      out.result.converged ? out.result.convergence_tick : out.result.end_tick;
  out.energy = rr.params.energy;
  append_window_metrics(out, 0, out.construction_end, "construction");
  if (out.result.converged && out.result.end_tick > out.construction_end)
    append_window_metrics(out, out.construction_end, out.result.end_tick, "steady");
  return out;
}

std::vector<RunOutput> run_batch(const scenario::ResolvedRun& rr,
                                 const std::vector<std::uint64_t>& seeds) {
  std::vector<RunOutput> outs;
  outs.reserve(seeds.size());
  for (auto seed : seeds) outs.push_back(run_one(rr, seed));
  return outs;
}

RunStats run_stats(const RunOutput& out) {
  RunStats s;
  const auto& r = out.result;
  for (const auto& tx : r.tx_log) {
    if (tx.start >= out.construction_end) continue;
    s.tx_bytes += tx.mac_bytes;
    if (tx.kind == mac154::FrameKind::Beacon) {
      ++s.beacons;
      if (tx.payload_is_dio) ++s.dio_beacons;
    }
  }
  s.dio_beacon_ratio =
      s.beacons > 0 ? static_cast<double>(s.dio_beacons) / static_cast<double>(s.beacons)
                    : 0.0;
  for (const auto& br : r.br_outcomes) {
    ++s.beacon_requests;
    if (br.resolved && br.next_beacon_had_dio) ++s.br_with_dio;
  }
  double delay_sum = 0.0;
  for (const auto& d : r.dio_departures) {
    if (d.cause != rpl::ResetCause::BeaconRequest) continue;
    ++s.solicited_events;
    delay_sum += static_cast<double>(d.beacon_tick - d.fire_tick);
  }
  s.solicited_delay_mean =
      s.solicited_events > 0 ? delay_sum / static_cast<double>(s.solicited_events) : 0.0;
  return s;
}

void write_metrics_csv(std::ostream& os, const RunOutput& out) {
  os << "node,role,hop,window,tx_j,rx_j,tx_bytes,rx_bytes,assoc_tick\n";
  for (const auto& m : out.node_metrics) {
    os << m.node << ',' << role_name(m.role) << ',' << m.hop << ',' << m.window << ','
       << fmt(m.tx_j) << ',' << fmt(m.rx_j) << ',' << m.tx_bytes << ',' << m.rx_bytes
       << ',';
    if (m.assoc_tick) os << *m.assoc_tick;
    os << '\n';
  }
}

void write_runs_csv(std::ostream& os, const std::vector<RunOutput>& outs) {
  os << "seed,converged,convergence_ticks,end_ticks,beacons,dio_beacons,"
        "dio_beacon_ratio,beacon_requests,br_with_dio,solicited_events,"
        "solicited_delay_mean_ticks,tx_bytes_construction\n";
  for (const auto& out : outs) {
    RunStats s = run_stats(out);
    os << out.seed << ',' << (out.result.converged ? 1 : 0) << ','
       << (out.result.converged ? out.result.convergence_tick : 0) << ','
       << out.result.end_tick << ',' << s.beacons << ',' << s.dio_beacons << ','
       << fmt(s.dio_beacon_ratio) << ',' << s.beacon_requests << ',' << s.br_with_dio
       << ',' << s.solicited_events << ',' << fmt(s.solicited_delay_mean) << ','
       << s.tx_bytes << '\n';
  }
}

void write_nodes_aggregate_csv(std::ostream& os, const std::vector<RunOutput>& outs) {
  struct Key {
    NodeId node;
    std::string window;
    bool operator<(const Key& o) const {
      return node != o.node ? node < o.node : window < o.window;
    }
  };
  struct Acc {
    Role role = Role::Rfd;
    int hop = -1;
    std::vector<double> tx_j, rx_j, tx_bytes, rx_bytes, assoc_tick;
  };
  std::map<Key, Acc> acc;
  for (const auto& out : outs) {
    for (const auto& m : out.node_metrics) {
      Acc& a = acc[Key{m.node, m.window}];
      a.role = m.role;
      a.hop = m.hop;
      a.tx_j.push_back(m.tx_j);
      a.rx_j.push_back(m.rx_j);
      a.tx_bytes.push_back(static_cast<double>(m.tx_bytes));
      a.rx_bytes.push_back(static_cast<double>(m.rx_bytes));
      if (m.assoc_tick) a.assoc_tick.push_back(static_cast<double>(*m.assoc_tick));
    }
  }
  os << "node,role,hop,window,metric,mean,ci95_half,n\n";
  auto emit = [&os](const Key& k, const Acc& a, const char* metric,
                    const std::vector<double>& xs) {
    if (xs.empty()) return;
    auto s = stats::summarize(xs);
    os << k.node << ',' << role_name(a.role) << ',' << a.hop << ',' << k.window << ','
       << metric << ',' << fmt(s.mean) << ','
       << (s.ci95_half ? fmt(*s.ci95_half) : std::string()) << ',' << s.n << '\n';
  };
  for (const auto& [k, a] : acc) {
    emit(k, a, "tx_j", a.tx_j);
    emit(k, a, "rx_j", a.rx_j);
    emit(k, a, "tx_bytes", a.tx_bytes);
    emit(k, a, "rx_bytes", a.rx_bytes);
    emit(k, a, "assoc_tick", a.assoc_tick);
  }
}

void write_summary(std::ostream& os, const scenario::ResolvedRun& rr,
                   const std::vector<std::uint64_t>& seeds,
                   const std::vector<RunOutput>& outs) {
  const auto& p = rr.params;
  os << "scheme=" << coupling::scheme_name(p.scheme.scheme) << '\n';
  os << "assoc_policy=" << coupling::assoc_policy_name(p.scheme.assoc_policy) << '\n';
  os << "bo=" << p.sf.bo << '\n' << "so=" << p.sf.so << '\n';
  os << "bi_ticks=" << p.sf.bi << '\n' << "sd_ticks=" << p.sf.sd << '\n';
  os << "imin_ticks=" << p.rpl.trickle.imin << '\n';
  os << "scan_ticks=" << p.scan_duration << '\n';
  if (p.scheme.scheme == coupling::Scheme::EveryBeacon)
    os << "sbp_size_bytes=" << p.scheme.sbp_size_bytes << '\n';
  os << "nodes=" << rr.topology.nodes().size() << '\n';
  os << "seeds=" << seeds.size() << '\n';

  int converged = 0;
  std::vector<double> conv_ticks;
  std::vector<double> ratios;
  long long br_total = 0, solicited_total = 0;
  double delay_weighted = 0.0;
  for (const auto& out : outs) {
    RunStats s = run_stats(out);
    if (out.result.converged) {
      ++converged;
      conv_ticks.push_back(static_cast<double>(out.result.convergence_tick));
    }
    ratios.push_back(s.dio_beacon_ratio);
    br_total += s.beacon_requests;
    solicited_total += s.solicited_events;
    delay_weighted += s.solicited_delay_mean * static_cast<double>(s.solicited_events);
  }
  os << "converged_runs=" << converged << '\n';
  if (!conv_ticks.empty()) {
    auto s = stats::summarize(conv_ticks);
    os << "convergence_mean_ticks=" << fmt(s.mean) << '\n';
    os << "convergence_mean_s=" << fmt(s.mean * kSecondsPerTick) << '\n';
    if (s.ci95_half) os << "convergence_ci95_ticks=" << fmt(*s.ci95_half) << '\n';
  }
  if (!ratios.empty())
    os << "dio_beacon_ratio_mean=" << fmt(stats::mean(ratios)) << '\n';
  os << "beacon_requests_total=" << br_total << '\n';
  os << "solicited_events_total=" << solicited_total << '\n';
  if (solicited_total > 0)
    os << "solicited_delay_mean_ticks="
       << fmt(delay_weighted / static_cast<double>(solicited_total)) << '\n';
  for (const auto& w : rr.warnings) os << "warning=" << w << '\n';
}

SweepSpec parse_sweep(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size())
    throw scenario::ConfigError("sweep needs param=v1,v2,..., got '" + text + "'");
  SweepSpec spec;
  spec.param = text.substr(0, eq);
  std::string rest = text.substr(eq + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    std::string v = comma == std::string::npos ? rest.substr(pos)
                                               : rest.substr(pos, comma - pos);
    if (!v.empty()) spec.values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (spec.values.empty())
    throw scenario::ConfigError("sweep for " + spec.param + " has no values");
  key_for_sweep_param(spec.param);  // validates the name
  return spec;
}

scenario::RunConfig apply_sweep_value(const scenario::RunConfig& base,
                                      const std::string& param,
                                      const std::string& value) {
  scenario::RunConfig cfg = base;
  std::string key = key_for_sweep_param(param);
  if (key == "rpl.imin") cfg.imin_set = false;  // a sweep overrides the base setting
  scenario::apply_key(cfg, key, value);
  return cfg;
}

std::vector<SweepPoint> run_sweep(const scenario::RunConfig& base, const SweepSpec& spec,
                                  const std::vector<std::uint64_t>& seeds) {
  std::vector<SweepPoint> points;
  for (const auto& value : spec.values) {
    scenario::RunConfig cfg = apply_sweep_value(base, spec.param, value);
    scenario::ResolvedRun rr = scenario::resolve(cfg);
    SweepPoint pt;
    pt.param = spec.param;
    pt.value = value;
    pt.runs = run_batch(rr, seeds);
    points.push_back(std::move(pt));
  }
  return points;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "param,value,seed,metric,metric_value\n";
  for (const auto& pt : points) {
    for (const auto& out : pt.runs) {
      RunStats s = run_stats(out);
      auto row = [&](const char* metric, const std::string& v) {
        os << pt.param << ',' << pt.value << ',' << out.seed << ',' << metric << ','
           << v << '\n';
      };
      row("converged", out.result.converged ? "1" : "0");
      if (out.result.converged)
        row("convergence_ticks", std::to_string(out.result.convergence_tick));
      row("tx_bytes_construction", std::to_string(s.tx_bytes));
      row("dio_beacon_ratio", fmt(s.dio_beacon_ratio));
      row("beacons", std::to_string(s.beacons));
    }
  }
}

void write_sweep_aggregate_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "param,value,metric,mean,ci95_half,n\n";
  for (const auto& pt : points) {
    std::vector<double> conv, bytes, ratio;
    for (const auto& out : pt.runs) {
      RunStats s = run_stats(out);
      if (out.result.converged)
        conv.push_back(static_cast<double>(out.result.convergence_tick));
      bytes.push_back(static_cast<double>(s.tx_bytes));
      ratio.push_back(s.dio_beacon_ratio);
    }
    auto emit = [&](const char* metric, const std::vector<double>& xs) {
      if (xs.empty()) return;
      auto s = stats::summarize(xs);
      os << pt.param << ',' << pt.value << ',' << metric << ',' << fmt(s.mean) << ','
         << (s.ci95_half ? fmt(*s.ci95_half) : std::string()) << ',' << s.n << '\n';
    };
    emit("convergence_ticks", conv);
    emit("tx_bytes_construction", bytes);
    emit("dio_beacon_ratio", ratio);
  }
}

}  // namespace beaconsim::runner
