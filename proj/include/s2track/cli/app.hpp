/*
 Copyright 2026 The s2track Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef S2TRACK_CLI_APP_HPP
#define S2TRACK_CLI_APP_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s2track/cli/config.hpp"
#include "s2track/cli/report.hpp"
#include "s2track/sim.hpp"

namespace s2track::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kMonitorFailure = 2 };

struct Options {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<long long> runs;
  std::optional<std::string> controller;
  std::optional<double> duration;
  std::optional<double> ctrl_rate;
};

/// Worker cap from S2TRACK_THREADS; 0 means "use all cores".
inline unsigned thread_cap() {
  const char* env = std::getenv("S2TRACK_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0') return 0;
  return static_cast<unsigned>(v);
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw Error("write failed for '" + path.string() + "'");
}

inline void write_csv(const std::filesystem::path& path, const TrajectoryLog& log) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  write_trajectory_csv(os, log);
  if (!os) throw Error("write failed for '" + path.string() + "'");
}

inline void prepare_out(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error("cannot create output directory '" + dir + "'");
  }
}

inline RunConfig resolve(const Options& o) {
  RunConfig rc = load_config(o.config);
  SimConfig& cfg = rc.sim;
  if (o.controller) cfg.variant = detail::parse_variant(*o.controller);
  if (o.duration) cfg.duration = *o.duration;
  if (o.ctrl_rate) cfg.ctrl_rate = *o.ctrl_rate;
  if (o.runs) {
    if (*o.runs < 1) throw ConfigError("--runs must be at least 1");
    rc.runs = static_cast<std::size_t>(*o.runs);
  }
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return rc;
}

inline int simulate(const Options& o, std::ostream& out) {
  RunConfig rc = resolve(o);
  if (o.seed) rc.sim.seed = *o.seed;
  prepare_out(o.out);
  const RunResult r = sim::run_scenario(rc.sim);
  const std::filesystem::path dir(o.out);
  write_csv(dir / "trajectory.csv", r.log);
  write_file(dir / "metrics.json", dump(run_to_json(rc.sim, r)));
  const RunMetrics& m = r.metrics;
  out << "simulate: " << to_string(rc.sim.variant) << ", final |x1| = " << m.final_x1_norm
      << " m, final eta = " << m.final_eta << " rad, converged = " << std::boolalpha
      << m.converged << ", V monotone = " << m.monotone.monotone << "\n";
  return m.monitors_pass() ? kOk : kMonitorFailure;
}

inline int montecarlo(const Options& o, std::ostream& out) {
  RunConfig rc = resolve(o);
  if (o.seed) rc.master_seed = *o.seed;
  prepare_out(o.out);
  const std::filesystem::path dir(o.out);
  sim::Campaign c;
  c.n_runs = rc.runs;
  c.base = rc.sim;
  c.master_seed = rc.master_seed;
  c.threads = thread_cap();
  const auto summary = sim::monte_carlo(
      c, [&](std::size_t i, const SimConfig&, const RunResult& r) {
        write_csv(dir / run_file_name(i), r.log);
      });
  write_file(dir / "summary.json", dump(summary_to_json(summary)));
  out << "montecarlo: " << summary.converged << "/" << summary.n_runs
      << " converged, " << summary.monotone << " monotone, worst final |x1| = "
      << summary.worst_final_x1_norm << " m\n";
  return summary.monitor_failures == 0 ? kOk : kMonitorFailure;
}

inline int compare(const Options& o, std::ostream& out) {
  RunConfig rc = resolve(o);
  if (o.seed) rc.sim.seed = *o.seed;
  prepare_out(o.out);
  const std::filesystem::path dir(o.out);
  const sim::CompareReport rep = sim::compare(rc.sim);
  write_csv(dir / "proposed.csv", rep.proposed.log);
  write_csv(dir / "baseline.csv", rep.baseline.log);
  write_file(dir / "compare.json", dump(compare_to_json(rc.sim, rep)));
  out << "compare: proposed monotone = " << std::boolalpha
      << rep.proposed.metrics.monotone.monotone
      << ", baseline monotone = " << rep.baseline.metrics.monotone.monotone << "\n";
  const bool ok = rep.proposed.metrics.monitors_pass() && rep.baseline.metrics.monitors_pass();
  return ok ? kOk : kMonitorFailure;
}

inline void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON configuration file")->required();
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_option("--seed", o.seed, "Run seed (simulate/compare) or master seed (montecarlo)");
  sub->add_option("--duration", o.duration, "Simulated time [s]");
  sub->add_option("--ctrl-rate", o.ctrl_rate, "Controller rate [Hz]");
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"s2track: quadrotor tracking on S^2 with a Lyapunov certificate"};
  app.name("s2track");
  app.require_subcommand(1);
  Options o;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one scenario");
  auto* mc_cmd = app.add_subcommand("montecarlo", "Run a randomized campaign");
  auto* cmp_cmd = app.add_subcommand("compare", "Run proposed and baseline laws side by side");
  for (auto* sub : {sim_cmd, mc_cmd, cmp_cmd}) detail::add_common(sub, o);
  for (auto* sub : {sim_cmd, mc_cmd}) {
    sub->add_option("--controller", o.controller, "proposed | baseline")
        ->check(CLI::IsMember({"proposed", "baseline"}));
  }
  mc_cmd->add_option("--runs", o.runs, "Number of runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failing->help();
    return kFailure;
  }

  try {
    if (sim_cmd->parsed()) return detail::simulate(o, out);
    if (mc_cmd->parsed()) return detail::montecarlo(o, out);
    return detail::compare(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return kFailure;
  } catch (const NumericalBlowup& e) {
    err << "error: numerical blow-up: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace s2track::cli

#endif  // S2TRACK_CLI_APP_HPP
