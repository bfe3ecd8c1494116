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
#ifndef S2TRACK_MODEL_HPP
#define S2TRACK_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include "s2track/errors.hpp"
#include "s2track/geom.hpp"
#include "s2track/reference.hpp"

namespace s2track {

/// Below this norm the virtual control has no usable direction [m/s^2].
inline constexpr double kMinVirtualControl = 1e-6;

struct QuadState {
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Rotation R;
};

/// Collective thrust acceleration and body angular velocity.
struct ControlInput {
  double f = 0.0;
  Vec3 omega = Vec3::Zero();
};

struct ErrorState {
  Vec3 x1 = Vec3::Zero();
  Vec3 x2 = Vec3::Zero();
  Vec3 x3 = Vec3::UnitZ();
  Vec3 d = Vec3::Zero();
  Vec3 v_virtual = Vec3::Zero();
  double eta = 0.0;
};

namespace model {

struct PlantDerivative {
  Vec3 p_dot;
  Vec3 v_dot;
  Mat3 R_dot;
};

inline Vec3 translational_accel(const Rotation& r, double f, double g) {
  return r.matrix().transpose() * zeta() * f - zeta() * g;
}

inline PlantDerivative plant_derivative(const QuadState& s, const ControlInput& u,
                                        double g = kGravity) {
  return {s.v, translational_accel(s.R, u.f, g),
          -geom::skew(u.omega) * s.R.matrix()};
}

inline ErrorState error_state(const QuadState& s, const RefSample& ref,
                              const Vec3& v_virtual, double g = kGravity) {
  const double n = v_virtual.norm();
  if (!(n >= kMinVirtualControl)) {
    throw DegenerateThrust("virtual control norm " + std::to_string(n) +
                           " below 1e-6");
  }
  ErrorState e;
  e.x1 = s.p - ref.p;
  e.x2 = s.v - ref.v;
  e.d = reference::d_vector(ref, g);
  e.v_virtual = v_virtual;
  e.x3 = s.R * (v_virtual / n);
  e.eta = std::acos(std::clamp(zeta().dot(e.x3), -1.0, 1.0));
  return e;
}

/// Angular velocity of the direction v/|v|: [v]x vdot / |v|^2.
inline Vec3 omega_v(const Vec3& v, const Vec3& vdot) {
  const double n2 = v.squaredNorm();
  if (!(n2 >= kMinVirtualControl * kMinVirtualControl)) {
    throw DegenerateThrust("omega_v: virtual control vanished");
  }
  return v.cross(vdot) / n2;
}

/// Time derivative of x3 = R v/|v| given body rate `omega` and the
/// direction rate `omega_v` of v.
inline Vec3 x3_derivative(const Vec3& x3, const Vec3& omega, const Rotation& r,
                          const Vec3& omega_v) {
  geom::require_unit(x3, "x3_derivative");
  return x3.cross(omega - r * omega_v);
}

/// Residual between a central difference of v/|v| and [omega_v]x v/|v|.
///
/// `v_fn` and `vdot_fn` map time to the curve and its exact derivative.
template <class Curve, class CurveRate>
double verify_appendix_kinematics(Curve&& v_fn, CurveRate&& vdot_fn, double t,
                                  double h) {
  const Vec3 v = v_fn(t);
  const Vec3 vp = v_fn(t + h), vm = v_fn(t - h);
  if (v.norm() < kMinVirtualControl || vp.norm() < kMinVirtualControl ||
      vm.norm() < kMinVirtualControl) {
    throw DegenerateThrust("verify_appendix_kinematics: curve passes near 0");
  }
  const Vec3 fd = (vp.normalized() - vm.normalized()) / (2.0 * h);
  const Vec3 wv = omega_v(v, vdot_fn(t));
  return (fd - wv.cross(v.normalized())).norm();
}

/// Same check with the curve rate itself taken by a central difference.
template <class Curve>
double verify_appendix_kinematics(Curve&& v_fn, double t, double h) {
  auto rate = [&](double tt) -> Vec3 {
    return (v_fn(tt + h) - v_fn(tt - h)) / (2.0 * h);
  };
  return verify_appendix_kinematics(v_fn, rate, t, h);
}

}  // namespace model
}  // namespace s2track

#endif  // S2TRACK_MODEL_HPP
