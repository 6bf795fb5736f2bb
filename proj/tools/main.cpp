// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: seeded runs, parameter sweeps, the closed-form
// delay tables, and the result-reproduction suite.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beaconsim/analysis.hpp"
#include "beaconsim/runner.hpp"
#include "beaconsim/scenario.hpp"
#include "beaconsim/validate.hpp"

namespace fs = std::filesystem;
using namespace beaconsim;

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw scenario::ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Shared run/sweep/validate options layered over an optional config file.
struct CommonOpts {
  std::string config;
  std::string scheme;
  int bo = -1;
  int so = -1;
  int sbp_size = -1;
  std::string scan;
  std::string seeds;
  long long steady_ticks = -1;
  std::string out = "out";
  bool trace = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config, "key=value config file");
  sub->add_option("--scheme", o.scheme, "proposed|sbp");
  sub->add_option("--bo", o.bo, "beacon order override");
  sub->add_option("--so", o.so, "superframe order override");
  sub->add_option("--sbp-size", o.sbp_size, "baseline blob size, bytes");
  sub->add_option("--scan", o.scan, "scan window: auto|TICKS");
  sub->add_option("--seeds", o.seeds, "seed count, or comma-separated list");
  sub->add_option("--steady-ticks", o.steady_ticks,
                  "simulated time to keep running after the last join");
  sub->add_option("--out", o.out, "output directory");
  sub->add_flag("--trace", o.trace, "write per-seed event traces");
}

scenario::RunConfig build_config(const CommonOpts& o) {
  scenario::RunConfig cfg = o.config.empty()
                                ? scenario::default_scenario()
                                : scenario::parse_config_text(read_text_file(o.config));
  if (!o.scheme.empty()) scenario::apply_key(cfg, "coupling.scheme", o.scheme);
  if (o.bo >= 0) scenario::apply_key(cfg, "mac.bo", std::to_string(o.bo));
  if (o.so >= 0) scenario::apply_key(cfg, "mac.so", std::to_string(o.so));
  if (o.sbp_size >= 0)
    scenario::apply_key(cfg, "coupling.sbp_size_bytes", std::to_string(o.sbp_size));
  if (!o.scan.empty()) scenario::apply_key(cfg, "coupling.scan_duration", o.scan);
  if (!o.seeds.empty()) scenario::apply_key(cfg, "sim.seeds", o.seeds);
  if (o.steady_ticks >= 0)
    scenario::apply_key(cfg, "sim.steady_ticks", std::to_string(o.steady_ticks));
  return cfg;
}

template <class Writer>
void write_out(const fs::path& path, Writer&& w) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  w(f);
}

int cmd_run(const CommonOpts& o) {
  scenario::RunConfig cfg = build_config(o);
  scenario::ResolvedRun rr = scenario::resolve(cfg);
  auto seeds = scenario::resolve_seeds(cfg);
  for (const auto& w : rr.warnings) std::cerr << "warning: " << w << "\n";

  fs::create_directories(o.out);
  std::vector<runner::RunOutput> outs;
  bool all_converged = true;
  for (auto seed : seeds) {
    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (o.trace) {
      trace_file.open(fs::path(o.out) / ("trace_seed" + std::to_string(seed) + ".tsv"),
                      std::ios::binary);
      trace = &trace_file;
    }
    runner::RunOutput out = runner::run_one(rr, seed, trace);
    write_out(fs::path(o.out) / ("metrics_seed" + std::to_string(seed) + ".csv"),
              [&](std::ostream& f) { runner::write_metrics_csv(f, out); });
    if (out.result.converged) {
      std::cout << "seed " << seed << ": converged at tick "
                << out.result.convergence_tick << " ("
                << ticks_to_seconds(out.result.convergence_tick) << " s)\n";
    } else {
      std::cout << "seed " << seed << ": DID NOT CONVERGE by tick "
                << out.result.end_tick << "\n";
      all_converged = false;
    }
    for (const auto& n : out.result.consistency_notes)
      std::cerr << "note: seed " << seed << ": " << n << "\n";
    outs.push_back(std::move(out));
  }
  write_out(fs::path(o.out) / "runs.csv",
            [&](std::ostream& f) { runner::write_runs_csv(f, outs); });
  write_out(fs::path(o.out) / "nodes_aggregate.csv",
            [&](std::ostream& f) { runner::write_nodes_aggregate_csv(f, outs); });
  write_out(fs::path(o.out) / "summary.txt",
            [&](std::ostream& f) { runner::write_summary(f, rr, seeds, outs); });
  std::cout << "wrote " << outs.size() << " run(s) to " << o.out << "\n";
  return all_converged ? 0 : 2;
}

int cmd_sweep(const CommonOpts& o, const std::string& sweep_arg) {
  scenario::RunConfig cfg = build_config(o);
  runner::SweepSpec spec = runner::parse_sweep(sweep_arg);
  auto seeds = scenario::resolve_seeds(cfg);
  auto points = runner::run_sweep(cfg, spec, seeds);

  fs::create_directories(o.out);
  write_out(fs::path(o.out) / "sweep.csv",
            [&](std::ostream& f) { runner::write_sweep_csv(f, points); });
  write_out(fs::path(o.out) / "sweep_aggregate.csv",
            [&](std::ostream& f) { runner::write_sweep_aggregate_csv(f, points); });

  bool all_converged = true;
  for (const auto& pt : points) {
    int conv = 0;
    for (const auto& r : pt.runs) conv += r.result.converged;
    std::cout << spec.param << "=" << pt.value << ": " << conv << "/" << pt.runs.size()
              << " converged\n";
    if (conv != static_cast<int>(pt.runs.size())) all_converged = false;
  }
  std::cout << "wrote sweep over " << points.size() << " value(s) to " << o.out << "\n";
  return all_converged ? 0 : 2;
}

int cmd_analyze(int samples, std::uint64_t seed, const std::string& out_dir) {
  auto sf = mac154::superframe_from(5, 2);
  Tick imin = sf.bi - sf.sd;
  std::ostringstream csv;
  csv << "p,imax_doublings,imin_ticks,bi_ticks,expected_delay_analytic,"
         "expected_delay_mc,rel_err\n";
  std::cout << "   p  imax      analytic            mc    rel_err\n";
  for (double p : {0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0}) {
    for (int imax : {0, 2, 4, 8}) {
      Rng rng(seed);
      double analytic = analysis::expected_delay_stationary(imin, imax, p, sf.bi);
      auto mc = analysis::monte_carlo_delay(rng, imin, imax, p, sf.bi, samples);
      double rel = std::abs(mc.mean_delay - analytic) / analytic;
      char line[128];
      std::snprintf(line, sizeof line, "%4.2f  %4d  %12.2f  %12.2f  %8.4f%%\n", p,
                    imax, analytic, mc.mean_delay, rel * 100.0);
      std::cout << line;
      csv << p << ',' << imax << ',' << imin << ',' << sf.bi << ',' << analytic << ','
          << mc.mean_delay << ',' << rel << '\n';
    }
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_out(fs::path(out_dir) / "analysis.csv",
              [&](std::ostream& f) { f << csv.str(); });
    std::cout << "wrote " << (fs::path(out_dir) / "analysis.csv").string() << "\n";
  }
  return 0;
}

std::string self_path(const char* argv0) {
  std::error_code ec;
  fs::path p = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) return p.string();
  return fs::absolute(argv0).string();
}

int cmd_validate(const std::string& cli_path, const std::string& out_dir) {
  validate::Context ctx;
  ctx.cli_path = cli_path;
  ctx.work_dir = (fs::path(out_dir) / "validate_tmp").string();
  ctx.progress = &std::cerr;
  auto results = validate::run_all(ctx);
  validate::print_results(std::cout, results);
  return validate::all_passed(results) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beacon-coupled tree construction simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run = app.add_subcommand("run", "execute seeded runs, write CSV metrics");
  add_common(run, run_opts);

  CommonOpts sweep_opts;
  std::string sweep_arg;
  CLI::App* sweep = app.add_subcommand("sweep", "run a batch per parameter value");
  add_common(sweep, sweep_opts);
  sweep->add_option("--sweep", sweep_arg, "param=v1,v2,... (bo, so, scheme, "
                                          "sbp_size_bytes, scan_duration, imin)")
      ->required();

  int an_samples = 5000;
  std::uint64_t an_seed = 1;
  std::string an_out;
  CLI::App* analyze =
      app.add_subcommand("analyze", "closed-form delay table vs direct sampling");
  analyze->add_option("--samples", an_samples, "intervals per grid point");
  analyze->add_option("--seed", an_seed, "sampler seed");
  analyze->add_option("--out", an_out, "also write analysis.csv here");

  std::string val_out = "out";
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "run the result-reproduction suite");
  validate_cmd->add_option("--out", val_out, "scratch directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_arg);
    if (analyze->parsed()) return cmd_analyze(an_samples, an_seed, an_out);
    if (validate_cmd->parsed()) return cmd_validate(self_path(argv[0]), val_out);
  } catch (const scenario::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
