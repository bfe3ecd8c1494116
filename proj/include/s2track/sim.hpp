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
#ifndef S2TRACK_SIM_HPP
#define S2TRACK_SIM_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "s2track/controller.hpp"
#include "s2track/errors.hpp"
#include "s2track/geom.hpp"
#include "s2track/lyapunov.hpp"
#include "s2track/model.hpp"
#include "s2track/reference.hpp"

namespace s2track {

inline constexpr double kBlowupLimit = 1e9;
inline constexpr double kConvergedPosition = 0.05;  // m
inline constexpr double kConvergedTilt = 0.05;      // rad
inline constexpr std::int64_t kProjectionInterval = 1000;

/// Closed or open real interval used for uniform sampling.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool open = false;
};

namespace init {

/// Known start. Attitude is pitch(theta0) * roll(phi0).
struct Explicit {
  Vec3 p0 = Vec3::Zero();
  Vec3 v0 = Vec3::Zero();
  double theta0 = 0.0;
  double phi0 = 0.0;
};

/// Uniformly randomized start, zero initial velocity.
struct Random {
  Interval x0{-5.0, 0.0, false};
  Interval y0{-2.5, 2.5, false};
  Interval z0{1.0, 6.0, false};
  Interval theta0{-std::numbers::pi, std::numbers::pi, true};
  Interval phi0{-std::numbers::pi, std::numbers::pi, true};
};

}  // namespace init

using InitSpec = std::variant<init::Explicit, init::Random>;

enum class ControllerVariant { kProposed, kBaseline };

inline const char* to_string(ControllerVariant v) {
  return v == ControllerVariant::kProposed ? "proposed" : "baseline";
}

struct SimConfig {
  double duration = 20.0;
  double ctrl_rate = 100.0;
  int phys_substeps = 10;
  double gravity = kGravity;
  Gains gains;
  reference::TrajectorySpec trajectory = reference::PaperLine{};
  InitSpec init = init::Random{};
  ControllerVariant variant = ControllerVariant::kProposed;
  std::uint64_t seed = 0;

  std::int64_t control_steps() const {
    return static_cast<std::int64_t>(std::llround(duration * ctrl_rate));
  }
  double control_period() const { return 1.0 / ctrl_rate; }
  double physics_step() const { return 1.0 / (ctrl_rate * phys_substeps); }

  Gains effective_gains() const {
    Gains g = gains;
    g.attitude.baseline = (variant == ControllerVariant::kBaseline);
    return g;
  }

  void validate() const {
    if (!(duration > 0.0) || !std::isfinite(duration)) {
      throw InvalidArgument("duration must be positive");
    }
    if (!(ctrl_rate > 0.0) || !std::isfinite(ctrl_rate)) {
      throw InvalidArgument("ctrl_rate must be positive");
    }
    if (phys_substeps < 1) throw InvalidArgument("phys_substeps must be >= 1");
    if (control_steps() < 1) throw InvalidArgument("duration shorter than one control period");
    gains.attitude.validate();
    reference::validate(trajectory);
    if (const auto* r = std::get_if<init::Random>(&init)) {
      for (const Interval* iv : {&r->x0, &r->y0, &r->z0, &r->theta0, &r->phi0}) {
        if (!(iv->hi >= iv->lo) || (iv->open && !(iv->hi > iv->lo))) {
          throw InvalidArgument("empty initial-condition range");
        }
      }
    }
  }
};

/// One row of the control-rate log.
struct LogRow {
  double t = 0.0;
  Vec3 p = Vec3::Zero();
  Vec3 p_r = Vec3::Zero();
  Vec3 x1 = Vec3::Zero();
  Vec3 x2 = Vec3::Zero();
  Vec3 x3 = Vec3::UnitZ();
  double eta = 0.0;
  double f = 0.0;
  Vec3 omega = Vec3::Zero();
  double kappa1 = 0.0;
  double ortho_error = 0.0;
  CertificateSample cert;
};

struct TrajectoryLog {
  std::vector<LogRow> rows;

  std::vector<CertificateSample> certificates() const {
    std::vector<CertificateSample> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.cert);
    return out;
  }
};

struct RunMetrics {
  double initial_eta = 0.0;
  double initial_V = 0.0;
  double final_x1_norm = 0.0;
  double final_eta = 0.0;
  /// Empty when the run never settles.
  std::optional<double> settle_time;
  double peak_x1_norm = 0.0;
  double peak_omega_norm = 0.0;
  double effort_f = 0.0;
  double effort_f2 = 0.0;
  double effort_omega2 = 0.0;
  double max_ortho_error = 0.0;
  double max_x3_unit_error = 0.0;
  bool converged = false;
  std::size_t singular_samples = 0;
  std::size_t degenerate_samples = 0;
  lyapunov::Assumption1Report assumption1;
  lyapunov::MonotoneReport monotone;
  lyapunov::EnvelopeReport envelope;

  /// Monitor verdict: thrust stayed nonzero and the run never hit the singular set.
  bool monitors_pass() const { return assumption1.pass && singular_samples == 0; }
};

struct RunResult {
  QuadState initial;
  TrajectoryLog log;
  RunMetrics metrics;
};

/// Sample seen by physics-rate observers. `held` is the zero-order-held
/// control output computed at the last control instant.
struct PhysicsSample {
  double t;
  const QuadState& state;
  const ControlOutput& held;
  int substep;
};

namespace sim {

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double sample(std::mt19937_64& rng, const Interval& iv) {
  for (;;) {
    const double u = uniform01(rng);
    if (iv.open && u == 0.0) continue;
    return iv.lo + (iv.hi - iv.lo) * u;
  }
}

inline QuadState initial_state(const init::Explicit& e) {
  QuadState s;
  s.p = e.p0;
  s.v = e.v0;
  s.R = Rotation::pitch(e.theta0) * Rotation::roll(e.phi0);
  return s;
}

/// Draws (x0, y0, z0, theta0, phi0) in that order.
inline init::Explicit draw_initial_conditions(std::mt19937_64& rng,
                                              const init::Random& r) {
  init::Explicit e;
  e.p0.x() = sample(rng, r.x0);
  e.p0.y() = sample(rng, r.y0);
  e.p0.z() = sample(rng, r.z0);
  e.theta0 = sample(rng, r.theta0);
  e.phi0 = sample(rng, r.phi0);
  return e;
}

inline QuadState sample_initial_conditions(std::mt19937_64& rng, const InitSpec& spec) {
  if (const auto* e = std::get_if<init::Explicit>(&spec)) return initial_state(*e);
  return initial_state(draw_initial_conditions(rng, std::get<init::Random>(spec)));
}

/// splitmix64 finalizer; decorrelates per-run seeds.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline void check_finite(const QuadState& s) {
  auto bad = [](const auto& m) {
    return !m.allFinite() || m.cwiseAbs().maxCoeff() > kBlowupLimit;
  };
  if (bad(s.p) || bad(s.v) || bad(s.R.matrix())) {
    throw NumericalBlowup("state left the representable range");
  }
}

/// Advances the plant by `dt` with (f, omega) held.
///
/// Attitude uses the exact exponential; translation uses classical RK4 with
/// the attitude evaluated in closed form at each stage time.
inline QuadState step(const QuadState& s, const ControlInput& u, double dt,
                      double g = kGravity) {
  if (!(dt > 0.0)) throw InvalidArgument("step: dt must be positive");
  auto accel = [&](double tau) {
    const Rotation r = tau > 0.0 ? geom::rodrigues_step(u.omega, tau, s.R) : s.R;
    return model::translational_accel(r, u.f, g);
  };
  const Vec3 a0 = accel(0.0);
  const Vec3 a_half = accel(0.5 * dt);
  const Vec3 a1 = accel(dt);

  // RK4 stages for y = (p, v), y' = (v, a(tau)).
  const Vec3 k1p = s.v, k1v = a0;
  const Vec3 k2p = s.v + 0.5 * dt * k1v, k2v = a_half;
  const Vec3 k3p = s.v + 0.5 * dt * k2v, k3v = a_half;
  const Vec3 k4p = s.v + dt * k3v, k4v = a1;

  QuadState out;
  out.p = s.p + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  out.v = s.v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  out.R = geom::rodrigues_step(u.omega, dt, s.R);
  check_finite(out);
  return out;
}

inline LogRow make_row(double t, const QuadState& s, const RefSample& ref,
                       const ControlOutput& c, const Gains& gains) {
  LogRow row;
  row.t = t;
  row.p = s.p;
  row.p_r = ref.p;
  row.x1 = c.error.x1;
  row.x2 = c.error.x2;
  row.x3 = c.error.x3;
  row.eta = c.error.eta;
  row.f = c.input.f;
  row.omega = c.input.omega;
  row.kappa1 = c.diag.kappa1;
  row.ortho_error = geom::orthonormality_error(s.R.matrix());
  row.cert = lyapunov::certificate(t, c, gains);
  return row;
}

inline RunMetrics compute_metrics(const TrajectoryLog& log, const Gains& gains,
                                  double ctrl_period) {
  RunMetrics m;
  const auto& rows = log.rows;
  if (rows.empty()) return m;
  const LogRow& last = rows.back();
  m.initial_eta = rows.front().eta;
  m.initial_V = rows.front().cert.V;
  m.final_x1_norm = last.x1.norm();
  m.final_eta = last.eta;
  m.converged = m.final_x1_norm < kConvergedPosition && m.final_eta < kConvergedTilt;

  std::vector<double> t, u;
  t.reserve(rows.size());
  u.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const LogRow& r = rows[k];
    m.peak_x1_norm = std::max(m.peak_x1_norm, r.x1.norm());
    m.max_ortho_error = std::max(m.max_ortho_error, r.ortho_error);
    m.max_x3_unit_error = std::max(m.max_x3_unit_error, std::abs(r.x3.norm() - 1.0));
    if (r.cert.flags.singular) ++m.singular_samples;
    if (r.cert.flags.degenerate_thrust) ++m.degenerate_samples;
    t.push_back(r.t);
    u.push_back(r.cert.u_norm);
    // The last row's input is never applied.
    if (k + 1 < rows.size()) {
      m.peak_omega_norm = std::max(m.peak_omega_norm, r.omega.norm());
      m.effort_f += r.f * ctrl_period;
      m.effort_f2 += r.f * r.f * ctrl_period;
      m.effort_omega2 += r.omega.squaredNorm() * ctrl_period;
    }
  }
  if (m.converged) {
    std::size_t k = rows.size();
    while (k > 0 && rows[k - 1].x1.norm() < kConvergedPosition &&
           rows[k - 1].eta < kConvergedTilt) {
      --k;
    }
    m.settle_time = rows[k].t;
  }
  m.assumption1 = lyapunov::assumption1_monitor(t, u);
  const auto certs = log.certificates();
  m.monotone = lyapunov::monotone_check(certs);
  m.envelope = lyapunov::envelope_check(certs, gains.position.alpha, gains.attitude.k1);
  return m;
}

/// Runs one closed-loop scenario from `initial`.
///
/// Control is evaluated at each control instant and held for `phys_substeps`
/// physics steps. `observer` sees every physics-rate sample.
template <class Observer>
RunResult run_from(const SimConfig& cfg, const QuadState& initial, Observer&& observer) {
  cfg.validate();
  const Gains gains = cfg.effective_gains();
  const std::int64_t n = cfg.control_steps();
  const double dt = cfg.physics_step();
  RunResult result;
  result.initial = initial;
  result.log.rows.reserve(static_cast<std::size_t>(n) + 1);

  QuadState s = initial;
  std::int64_t phys_count = 0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double tk = static_cast<double>(k) / cfg.ctrl_rate;
    const RefSample ref = reference::eval(cfg.trajectory, tk);
    const ControlOutput c = controller::control(s, ref, gains, cfg.gravity);
    result.log.rows.push_back(make_row(tk, s, ref, c, gains));
    observer(PhysicsSample{tk, s, c, 0});
    if (k == n) break;
    for (int j = 1; j <= cfg.phys_substeps; ++j) {
      try {
        s = step(s, c.input, dt, cfg.gravity);
      } catch (const NumericalBlowup& e) {
        throw NumericalBlowup(std::string(e.what()) + " at t=" +
                              std::to_string(tk + j * dt) + " (seed " +
                              std::to_string(cfg.seed) + ")");
      }
      if (++phys_count % kProjectionInterval == 0) {
        s.R = geom::project_so3(s.R.matrix());
      }
      if (j < cfg.phys_substeps) observer(PhysicsSample{tk + j * dt, s, c, j});
    }
  }
  result.metrics = compute_metrics(result.log, gains, cfg.control_period());
  return result;
}

/// Initial state for `cfg`: explicit, or drawn from a generator seeded with cfg.seed.
inline QuadState initial_state(const SimConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return sample_initial_conditions(rng, cfg.init);
}

template <class Observer>
RunResult run_scenario(const SimConfig& cfg, Observer&& observer) {
  return run_from(cfg, initial_state(cfg), std::forward<Observer>(observer));
}

inline RunResult run_scenario(const SimConfig& cfg) {
  return run_scenario(cfg, [](const PhysicsSample&) {});
}

struct Campaign {
  std::size_t n_runs = 100;
  SimConfig base;
  std::uint64_t master_seed = 0;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct CampaignRun {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  QuadState initial;
  RunMetrics metrics;
};

struct CampaignSummary {
  std::uint64_t master_seed = 0;
  std::size_t n_runs = 0;
  std::size_t converged = 0;
  std::size_t monotone = 0;
  std::size_t within_envelope = 0;
  std::size_t monitor_failures = 0;
  double worst_final_x1_norm = 0.0;
  double worst_final_eta = 0.0;
  double min_u_norm = std::numeric_limits<double>::infinity();
  std::vector<CampaignRun> runs;
};

using RunSink = std::function<void(std::size_t index, const SimConfig&, const RunResult&)>;

inline SimConfig campaign_run_config(const Campaign& c, std::size_t index) {
  SimConfig cfg = c.base;
  cfg.seed = mix_seed(c.master_seed, index);
  return cfg;
}

/// Runs every campaign member, possibly in parallel. `sink` is called from the
/// worker that produced the run; aggregation is in run-index order.
inline CampaignSummary monte_carlo(const Campaign& c, const RunSink& sink = {}) {
  if (c.n_runs < 1) throw InvalidArgument("campaign needs at least one run");
  c.base.validate();
  CampaignSummary summary;
  summary.master_seed = c.master_seed;
  summary.n_runs = c.n_runs;
  summary.runs.resize(c.n_runs);

  unsigned workers = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, c.n_runs));

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= c.n_runs) return;
      try {
        const SimConfig cfg = campaign_run_config(c, i);
        RunResult r = run_scenario(cfg);
        if (sink) sink(i, cfg, r);
        summary.runs[i] = CampaignRun{i, cfg.seed, r.initial, std::move(r.metrics)};
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        next.store(c.n_runs);
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& run : summary.runs) {
    const RunMetrics& m = run.metrics;
    if (m.converged) ++summary.converged;
    if (m.monotone.monotone) ++summary.monotone;
    if (m.envelope.within) ++summary.within_envelope;
    if (!m.monitors_pass()) ++summary.monitor_failures;
    summary.worst_final_x1_norm = std::max(summary.worst_final_x1_norm, m.final_x1_norm);
    summary.worst_final_eta = std::max(summary.worst_final_eta, m.final_eta);
    summary.min_u_norm = std::min(summary.min_u_norm, m.assumption1.min_u_norm);
  }
  return summary;
}

struct CompareReport {
  RunResult proposed;
  RunResult baseline;

  double delta_peak_x1() const {
    return proposed.metrics.peak_x1_norm - baseline.metrics.peak_x1_norm;
  }
  /// Empty if either run fails to settle.
  std::optional<double> delta_settle_time() const {
    const auto& a = proposed.metrics.settle_time;
    const auto& b = baseline.metrics.settle_time;
    if (!a || !b) return std::nullopt;
    return *a - *b;
  }
  double delta_effort_f() const {
    return proposed.metrics.effort_f - baseline.metrics.effort_f;
  }
  double delta_effort_f2() const {
    return proposed.metrics.effort_f2 - baseline.metrics.effort_f2;
  }
  double delta_effort_omega2() const {
    return proposed.metrics.effort_omega2 - baseline.metrics.effort_omega2;
  }
  double delta_peak_omega() const {
    return proposed.metrics.peak_omega_norm - baseline.metrics.peak_omega_norm;
  }
};

/// Proposed and baseline laws from the same initial state.
inline CompareReport compare(const SimConfig& cfg) {
  const QuadState x0 = initial_state(cfg);
  SimConfig a = cfg, b = cfg;
  a.variant = ControllerVariant::kProposed;
  b.variant = ControllerVariant::kBaseline;
  CompareReport r;
  r.proposed = run_from(a, x0, [](const PhysicsSample&) {});
  r.baseline = run_from(b, x0, [](const PhysicsSample&) {});
  return r;
}

/// The comparison example: start at (-3, 3, 2) m, roll 1 rad, line reference.
inline SimConfig comparison_config() {
  SimConfig cfg;
  init::Explicit e;
  e.p0 = Vec3(-3.0, 3.0, 2.0);
  e.theta0 = 0.0;
  e.phi0 = 1.0;
  cfg.init = e;
  return cfg;
}

}  // namespace sim
}  // namespace s2track

#endif  // S2TRACK_SIM_HPP
