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
#ifndef S2TRACK_LYAPUNOV_HPP
#define S2TRACK_LYAPUNOV_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "s2track/controller.hpp"
#include "s2track/errors.hpp"
#include "s2track/geom.hpp"

namespace s2track {

/// Below this thrust norm the thrust monitor warns [m/s^2].
inline constexpr double kThrustWarn = 0.1;

struct CertificateFlags {
  bool singular = false;
  bool degenerate_thrust = false;

  bool any() const { return singular || degenerate_thrust; }
};

struct CertificateSample {
  double t = 0.0;
  double V = 0.0;
  double V_xi = 0.0;
  double V_tilt = 0.0;
  double Vdot_analytic = 0.0;
  double u_norm = 0.0;
  CertificateFlags flags;
};

namespace lyapunov {

inline double quadratic_part(const Vec3& x1, const Vec3& x2, const Mat6& p) {
  const Vec6 xi = controller::stack(x1, x2);
  return xi.dot(p * xi);
}

namespace detail {
inline double checked_one_plus(const Vec3& x3) {
  const double cz = zeta().dot(x3);
  if (!(1.0 + cz > kSingularTol)) {
    throw SingularConfiguration("x3 at the antipode of zeta");
  }
  return cz;
}
}  // namespace detail

/// Tilt barrier (1 - cos eta) / (2 k2 (1 + cos eta)).
inline double tilt_part(const Vec3& x3, double k2) {
  const double cz = detail::checked_one_plus(x3);
  return (1.0 - cz) / (2.0 * k2 * (1.0 + cz));
}

inline double composite_V(const Vec3& x1, const Vec3& x2, const Vec3& x3,
                          const Mat6& p, double k2) {
  return quadratic_part(x1, x2, p) + tilt_part(x3, k2);
}

/// dV/dt along the closed loop with the quadratic V_xi of the linear
/// position law: -|xi|^2 - kappa1 (1 - cos eta) / (k2 (1 + cos eta)).
inline double vdot_analytic(const Vec3& x1, const Vec3& x2, const Vec3& x3,
                            double kappa1, double k2) {
  const double cz = detail::checked_one_plus(x3);
  return -(x1.squaredNorm() + x2.squaredNorm()) -
         kappa1 * (1.0 - cz) / (k2 * (1.0 + cz));
}

/// Worst-case exponential decay rate min(alpha, 2 k1).
inline double decay_rate(double alpha, double k1) { return std::min(alpha, 2.0 * k1); }

inline double exp_bound(double v0, double alpha, double k1, double t) {
  return v0 * std::exp(-decay_rate(alpha, k1) * t);
}

/// Certificate at one instant. Never throws: at the singular point the
/// barrier denominator is floored and the flag is set.
inline CertificateSample certificate(double t, const ControlOutput& c,
                                     const Gains& gains) {
  CertificateSample s;
  s.t = t;
  const ErrorState& e = c.error;
  const double k2 = gains.attitude.k2;
  const double cz = std::clamp(zeta().dot(e.x3), -1.0, 1.0);
  const double one_plus = std::max(1.0 + cz, kSingularTol);
  s.V_xi = quadratic_part(e.x1, e.x2, gains.position.P);
  s.V_tilt = (1.0 - cz) / (2.0 * k2 * one_plus);
  s.V = s.V_xi + s.V_tilt;
  s.Vdot_analytic = -(e.x1.squaredNorm() + e.x2.squaredNorm()) -
                    c.diag.kappa1 * (1.0 - cz) / (k2 * one_plus);
  s.u_norm = c.diag.u_norm;
  s.flags.singular = c.diag.singular;
  s.flags.degenerate_thrust = c.diag.degenerate_thrust;
  return s;
}

struct Assumption1Report {
  double min_u_norm = std::numeric_limits<double>::infinity();
  double min_u_time = 0.0;
  /// Sample times with |u_xi| below the warn threshold.
  std::vector<double> warn_times;
  bool pass = true;
};

/// A-posteriori check that |u_xi| stays away from zero along a run.
inline Assumption1Report assumption1_monitor(std::span<const double> t,
                                             std::span<const double> u_norm) {
  if (t.size() != u_norm.size()) {
    throw InvalidArgument("assumption1_monitor: size mismatch");
  }
  Assumption1Report r;
  for (std::size_t i = 0; i < u_norm.size(); ++i) {
    if (u_norm[i] < r.min_u_norm) {
      r.min_u_norm = u_norm[i];
      r.min_u_time = t[i];
    }
    if (u_norm[i] < kThrustWarn) r.warn_times.push_back(t[i]);
    if (!(u_norm[i] >= kMinVirtualControl)) r.pass = false;
  }
  return r;
}

struct MonotoneReport {
  bool monotone = true;
  std::size_t violations = 0;
  /// Largest V(t_{k+1}) - V(t_k) relative to max(1, V(t_k)).
  double worst_relative_increase = -std::numeric_limits<double>::infinity();
  double first_violation_time = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr double kMonotoneTol = 1e-4;

/// V(t_{k+1}) <= V(t_k) + 1e-4 max(1, V(t_k)) over steps with clear flags.
inline MonotoneReport monotone_check(std::span<const CertificateSample> samples,
                                     double tol = kMonotoneTol) {
  MonotoneReport r;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const auto& a = samples[k];
    const auto& b = samples[k + 1];
    if (a.flags.any() || b.flags.any()) continue;
    const double scale = std::max(1.0, a.V);
    const double rel = (b.V - a.V) / scale;
    r.worst_relative_increase = std::max(r.worst_relative_increase, rel);
    if (b.V > a.V + tol * scale) {
      if (r.violations == 0) r.first_violation_time = b.t;
      ++r.violations;
      r.monotone = false;
    }
  }
  return r;
}

struct EnvelopeReport {
  bool within = true;
  /// max over samples of V(t) / bound(t).
  double worst_ratio = 0.0;
};

inline constexpr double kEnvelopeSlack = 1.05;

/// V(t) <= slack * V(0) exp(-min(alpha, 2 k1) t).
inline EnvelopeReport envelope_check(std::span<const CertificateSample> samples,
                                     double alpha, double k1,
                                     double slack = kEnvelopeSlack) {
  EnvelopeReport r;
  if (samples.empty()) return r;
  const double v0 = samples.front().V;
  const double t0 = samples.front().t;
  for (const auto& s : samples) {
    const double bound = exp_bound(v0, alpha, k1, s.t - t0);
    if (bound > 0.0) {
      r.worst_ratio = std::max(r.worst_ratio, s.V / bound);
    } else if (s.V > 0.0) {
      r.worst_ratio = std::numeric_limits<double>::infinity();
    }
    if (s.V > slack * bound) r.within = false;
  }
  return r;
}

}  // namespace lyapunov
}  // namespace s2track

#endif  // S2TRACK_LYAPUNOV_HPP
