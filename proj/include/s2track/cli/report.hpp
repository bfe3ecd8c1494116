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
#ifndef S2TRACK_CLI_REPORT_HPP
#define S2TRACK_CLI_REPORT_HPP

#include <array>
#include <charconv>
#include <cstdio>
#include <optional>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "s2track/sim.hpp"

namespace s2track::cli {

using nlohmann::json;

/// Column order of trajectory CSV files. Downstream tools rely on it.
inline constexpr std::array<std::string_view, 25> kTrajectoryColumns = {
    "t",    "p_x",     "p_y",     "p_z",     "pr_x", "pr_y", "pr_z",
    "x1_x", "x1_y",    "x1_z",    "x2_x",    "x2_y", "x2_z", "eta",
    "f",    "omega_x", "omega_y", "omega_z", "V",    "V_xi", "V_tilt",
    "Vdot", "u_norm",  "flag_singular", "flag_degenerate"};

/// Shortest round-trip decimal form, independent of the C locale.
inline void append_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

inline std::string trajectory_header() {
  std::string h;
  for (auto col : kTrajectoryColumns) {
    if (!h.empty()) h += ',';
    h += col;
  }
  return h;
}

inline void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log) {
  std::string line;
  line.reserve(512);
  os << trajectory_header() << '\n';
  for (const LogRow& r : log.rows) {
    line.clear();
    auto num = [&](double v) {
      if (!line.empty()) line += ',';
      append_number(line, v);
    };
    auto vec = [&](const Vec3& v) {
      num(v.x());
      num(v.y());
      num(v.z());
    };
    num(r.t);
    vec(r.p);
    vec(r.p_r);
    vec(r.x1);
    vec(r.x2);
    num(r.eta);
    num(r.f);
    vec(r.omega);
    num(r.cert.V);
    num(r.cert.V_xi);
    num(r.cert.V_tilt);
    num(r.cert.Vdot_analytic);
    num(r.cert.u_norm);
    line += r.cert.flags.singular ? ",1" : ",0";
    line += r.cert.flags.degenerate_thrust ? ",1" : ",0";
    os << line << '\n';
  }
}

namespace detail {
inline json optional_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}
inline json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
}  // namespace detail

inline json metrics_to_json(const RunMetrics& m) {
  json j;
  j["initial_eta"] = m.initial_eta;
  j["initial_V"] = m.initial_V;
  j["final_x1_norm"] = m.final_x1_norm;
  j["final_eta"] = m.final_eta;
  j["settle_time"] = detail::optional_number(m.settle_time);
  j["peak_x1_norm"] = m.peak_x1_norm;
  j["peak_omega_norm"] = m.peak_omega_norm;
  j["effort_f"] = m.effort_f;
  j["effort_f2"] = m.effort_f2;
  j["effort_omega2"] = m.effort_omega2;
  j["converged"] = m.converged;
  j["max_ortho_error"] = m.max_ortho_error;
  j["max_x3_unit_error"] = m.max_x3_unit_error;
  j["flags"] = {{"singular_samples", m.singular_samples},
                {"degenerate_samples", m.degenerate_samples}};
  j["assumption1"] = {{"min_u_norm", detail::optional_number(m.assumption1.min_u_norm)},
                      {"min_u_time", m.assumption1.min_u_time},
                      {"warn_count", m.assumption1.warn_times.size()},
                      {"pass", m.assumption1.pass}};
  j["monotone"] = m.monotone.monotone;
  j["monotone_violations"] = m.monotone.violations;
  j["worst_relative_increase"] =
      detail::optional_number(m.monotone.worst_relative_increase);
  j["first_violation_time"] = detail::optional_number(m.monotone.first_violation_time);
  j["within_envelope"] = m.envelope.within;
  j["envelope_worst_ratio"] = detail::optional_number(m.envelope.worst_ratio);
  j["monitors_pass"] = m.monitors_pass();
  return j;
}

inline json run_to_json(const SimConfig& cfg, const RunResult& r) {
  json j = metrics_to_json(r.metrics);
  j["controller"] = to_string(cfg.variant);
  j["seed"] = cfg.seed;
  j["initial_position"] = detail::to_json(r.initial.p);
  j["decay_rate"] = lyapunov::decay_rate(cfg.gains.position.alpha, cfg.gains.attitude.k1);
  return j;
}

inline std::string run_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "run_%04zu.csv", index);
  return buf;
}

inline json summary_to_json(const sim::CampaignSummary& s) {
  json j;
  j["master_seed"] = s.master_seed;
  j["n_runs"] = s.n_runs;
  j["converged"] = s.converged;
  j["monotone"] = s.monotone;
  j["within_envelope"] = s.within_envelope;
  j["monitor_failures"] = s.monitor_failures;
  j["worst_final_x1_norm"] = s.worst_final_x1_norm;
  j["worst_final_eta"] = s.worst_final_eta;
  j["min_u_norm"] = detail::optional_number(s.min_u_norm);
  json runs = json::array();
  for (const auto& r : s.runs) {
    runs.push_back({{"index", r.index},
                    {"seed", r.seed},
                    {"file", run_file_name(r.index)},
                    {"initial_position", detail::to_json(r.initial.p)},
                    {"initial_eta", r.metrics.initial_eta},
                    {"converged", r.metrics.converged},
                    {"final_x1_norm", r.metrics.final_x1_norm},
                    {"final_eta", r.metrics.final_eta},
                    {"settle_time", detail::optional_number(r.metrics.settle_time)},
                    {"monotone", r.metrics.monotone.monotone},
                    {"within_envelope", r.metrics.envelope.within},
                    {"min_u_norm", detail::optional_number(r.metrics.assumption1.min_u_norm)},
                    {"monitors_pass", r.metrics.monitors_pass()}});
  }
  j["runs"] = std::move(runs);
  return j;
}

inline json compare_to_json(const SimConfig& cfg, const sim::CompareReport& c) {
  SimConfig a = cfg, b = cfg;
  a.variant = ControllerVariant::kProposed;
  b.variant = ControllerVariant::kBaseline;
  json j;
  j["proposed"] = run_to_json(a, c.proposed);
  j["baseline"] = run_to_json(b, c.baseline);
  j["deltas"] = {{"peak_x1_norm", c.delta_peak_x1()},
                 {"settle_time", detail::optional_number(c.delta_settle_time())},
                 {"effort_f", c.delta_effort_f()},
                 {"effort_f2", c.delta_effort_f2()},
                 {"effort_omega2", c.delta_effort_omega2()},
                 {"peak_omega_norm", c.delta_peak_omega()}};
  return j;
}

/// Stable textual form: two-space indent, sorted keys, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace s2track::cli

#endif  // S2TRACK_CLI_REPORT_HPP
