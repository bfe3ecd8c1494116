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
#ifndef S2TRACK_CONTROLLER_HPP
#define S2TRACK_CONTROLLER_HPP

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>

#include "s2track/errors.hpp"
#include "s2track/geom.hpp"
#include "s2track/model.hpp"
#include "s2track/reference.hpp"

namespace s2track {

using Mat2 = Eigen::Matrix2d;
using Mat36 = Eigen::Matrix<double, 3, 6>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// 1 + zeta'x3 below this marks the antipodal singular point.
inline constexpr double kSingularTol = 1e-6;
/// kappa1 saturates at this multiple of k1.
inline constexpr double kKappaCapFactor = 1e6;

namespace controller {

/// Closed-form P for one axis of the double integrator under u = -kp x - kd xdot:
/// A'P + PA + I = 0 with A = [0 1; -kp -kd].
inline Mat2 solve_axis_lyapunov(double kp, double kd) {
  if (!(kp > 0.0) || !(kd > 0.0)) {
    throw NonHurwitz("per-axis gains must be positive (kp=" +
                     std::to_string(kp) + ", kd=" + std::to_string(kd) + ")");
  }
  const double p12 = 1.0 / (2.0 * kp);
  const double p22 = (p12 + 0.5) / kd;
  const double p11 = kp * p22 + kd * p12;
  Mat2 p;
  p << p11, p12, p12, p22;
  return p;
}

/// Closed-loop double-integrator matrix A - BK for the stacked error [x1; x2].
inline Mat6 closed_loop_matrix(const Mat36& k) {
  Mat6 a = Mat6::Zero();
  a.topRightCorner<3, 3>() = Mat3::Identity();
  a.bottomRows<3>() = -k;
  return a;
}

}  // namespace controller

/// Decoupled per-axis PD gains plus the matching quadratic Lyapunov matrix.
struct PositionGains {
  std::array<double, 3> kp{4.0, 4.0, 4.5};
  std::array<double, 3> kd{2.0, 2.0, 3.0};
  Mat36 K = Mat36::Zero();
  Mat6 P = Mat6::Zero();
  /// Decay rate of V_xi: 1 / lambda_max(P).
  double alpha = 0.0;

  static PositionGains from_axes(const std::array<double, 3>& kp,
                                 const std::array<double, 3>& kd) {
    PositionGains g;
    g.kp = kp;
    g.kd = kd;
    for (int i = 0; i < 3; ++i) {
      const Mat2 pa = controller::solve_axis_lyapunov(kp[i], kd[i]);
      g.K(i, i) = kp[i];
      g.K(i, i + 3) = kd[i];
      g.P(i, i) = pa(0, 0);
      g.P(i, i + 3) = pa(0, 1);
      g.P(i + 3, i) = pa(1, 0);
      g.P(i + 3, i + 3) = pa(1, 1);
    }
    Eigen::SelfAdjointEigenSolver<Mat6> es(g.P, Eigen::EigenvaluesOnly);
    g.alpha = 1.0 / es.eigenvalues().maxCoeff();
    return g;
  }

  static PositionGains nominal() { return from_axes({4.0, 4.0, 4.5}, {2.0, 2.0, 3.0}); }

  /// Frobenius norm of (A-BK)'P + P(A-BK) + I.
  double lyapunov_residual() const {
    const Mat6 a = controller::closed_loop_matrix(K);
    return (a.transpose() * P + P * a + Mat6::Identity()).norm();
  }
};

struct AttitudeGains {
  double k1 = 1.5;
  double k2 = 0.05;
  double c = 0.1;
  /// Commanded zeta' omega [rad/s].
  double heading_rate = 0.0;
  /// Drop the beta correction (prior S^2 design used for comparison).
  bool baseline = false;

  void validate() const {
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(c > 0.0)) {
      throw InvalidArgument("k1, k2 and c must be positive");
    }
    if (!std::isfinite(heading_rate)) throw InvalidArgument("heading_rate not finite");
  }
};

struct Gains {
  PositionGains position = PositionGains::nominal();
  AttitudeGains attitude;
};

/// Intermediate quantities of one control evaluation.
struct Diagnostics {
  Vec3 u_xi = Vec3::Zero();
  double u_norm = 0.0;
  Vec3 x2_dot = Vec3::Zero();
  Vec3 v_dot = Vec3::Zero();
  Vec3 omega_v = Vec3::Zero();
  Vec3 lambda = Vec3::Zero();
  Vec3 beta = Vec3::Zero();
  double kappa1 = 0.0;
  double eta = 0.0;
  bool singular = false;
  bool degenerate_thrust = false;
};

struct ControlOutput {
  ControlInput input;
  ErrorState error;
  Diagnostics diag;
};

namespace controller {

using model::omega_v;

inline Vec6 stack(const Vec3& a, const Vec3& b) {
  Vec6 s;
  s << a, b;
  return s;
}

/// Linear state feedback plus feedforward: -K [x1; x2] + d.
inline Vec3 u_xi(const Vec3& x1, const Vec3& x2, const Vec3& d,
                 const PositionGains& g) {
  return -g.K * stack(x1, x2) + d;
}

/// Rate of the virtual control along the closed loop, with the thrust `f`
/// actually applied: x2dot = R'zeta f - d and ddot = jerk.
inline Vec3 v_dot(const Vec3& x2, const Rotation& r, double f, const Vec3& d,
                  const Vec3& jerk, const PositionGains& g) {
  const Vec3 x2_dot = r.matrix().transpose() * zeta() * f - d;
  return -g.K * stack(x2, x2_dot) + jerk;
}

/// lambda = |u_xi| R (dV_xi/dx2)' with V_xi = xi' P xi.
inline Vec3 lambda(const Vec3& x1, const Vec3& x2, const Rotation& r,
                   double u_norm, const PositionGains& g) {
  const Vec3 grad_x2 =
      2.0 * (g.P.bottomLeftCorner<3, 3>() * x1 + g.P.bottomRightCorner<3, 3>() * x2);
  return u_norm * (r * grad_x2);
}

/// Correction term that injects translational error into the tilt loop.
/// Linear in `lam`; vanishes as x3 -> -zeta.
inline Vec3 beta(const Vec3& x3, const Vec3& lam, double k2, double c) {
  geom::require_unit(x3, "beta");
  const Vec3 z = zeta();
  const double cz = z.dot(x3);
  const double one_plus = 1.0 + cz;
  const double denom = 1.0 - cz + c;
  const Vec3 lam_lateral = lam - z * z.dot(lam);
  return k2 * one_plus * z.dot(lam) * x3 -
         k2 * one_plus * one_plus * c / denom * lam -
         k2 * one_plus * x3.dot(lam_lateral) / denom * x3;
}

/// Tilt gain schedule: k1 when the thrust points into the upper hemisphere
/// of the desired direction, k1 / sin(eta) otherwise. Capped at 1e6 k1.
inline double kappa1(double cos_tilt, double k1) {
  if (cos_tilt >= 0.0) return k1;
  const double cap = kKappaCapFactor * k1;
  if (cos_tilt <= -1.0 + 1e-9) return cap;
  return std::min(k1 / std::sqrt(1.0 - cos_tilt * cos_tilt), cap);
}

/// Thrust and body rate for the current state.
///
/// Evaluation order: u_xi, f, x2dot, vdot, omega_v, lambda, beta, omega.
/// A vanishing u_xi or an antipodal x3 raises a diagnostic flag instead of
/// throwing, so simulations stay total.
inline ControlOutput control(const QuadState& s, const RefSample& ref,
                             const Gains& gains, double g = kGravity) {
  const PositionGains& pg = gains.position;
  const AttitudeGains& ag = gains.attitude;
  ControlOutput out;
  Diagnostics& dg = out.diag;
  ErrorState& e = out.error;

  e.x1 = s.p - ref.p;
  e.x2 = s.v - ref.v;
  e.d = reference::d_vector(ref, g);
  dg.u_xi = u_xi(e.x1, e.x2, e.d, pg);
  e.v_virtual = dg.u_xi;
  dg.u_norm = dg.u_xi.norm();
  const double f = dg.u_norm;

  dg.x2_dot = s.R.matrix().transpose() * zeta() * f - e.d;
  dg.v_dot = v_dot(e.x2, s.R, f, e.d, ref.j, pg);

  if (dg.u_norm >= kMinVirtualControl) {
    e.x3 = s.R * (dg.u_xi / dg.u_norm);
    dg.omega_v = omega_v(dg.u_xi, dg.v_dot);
  } else {
    dg.degenerate_thrust = true;
    e.x3 = s.R * zeta();
    dg.omega_v = Vec3::Zero();
  }
  const double cz = std::clamp(zeta().dot(e.x3), -1.0, 1.0);
  e.eta = std::acos(cz);
  dg.eta = e.eta;
  dg.singular = (1.0 + cz) < kSingularTol;

  dg.lambda = lambda(e.x1, e.x2, s.R, dg.u_norm, pg);
  dg.beta = ag.baseline ? Vec3::Zero() : beta(e.x3, dg.lambda, ag.k2, ag.c);
  dg.kappa1 = kappa1(cz, ag.k1);

  const Vec3 z = zeta();
  const Mat3 lateral = Mat3::Identity() - z * z.transpose();
  const Vec3 w_lat =
      lateral * (s.R * dg.omega_v + z.cross(dg.kappa1 * e.x3 + dg.beta));
  out.input.f = f;
  out.input.omega = w_lat + z * ag.heading_rate;
  return out;
}

}  // namespace controller
}  // namespace s2track

#endif  // S2TRACK_CONTROLLER_HPP
