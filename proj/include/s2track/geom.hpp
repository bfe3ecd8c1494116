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
#ifndef S2TRACK_GEOM_HPP
#define S2TRACK_GEOM_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "s2track/errors.hpp"

namespace s2track {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Inertial "up" axis; also the body thrust axis.
inline Vec3 zeta() { return Vec3::UnitZ(); }

namespace geom {

inline constexpr double kOrthoTol = 1e-9;
inline constexpr double kUnitTol = 1e-6;
inline constexpr double kNearRotationTol = 0.1;

/// Cross-product matrix: skew(v) * w == v x w.
inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

inline double orthonormality_error(const Mat3& m) {
  return (m.transpose() * m - Mat3::Identity()).norm();
}

inline void require_unit(const Vec3& x, const char* what) {
  if (!(std::abs(x.norm() - 1.0) <= kUnitTol)) {
    throw NotUnit(std::string(what) + ": expected a unit vector, norm = " +
                  std::to_string(x.norm()));
  }
}

}  // namespace geom

/// Attitude matrix taking inertial coordinates to body coordinates.
///
/// Construction through `from_matrix` checks orthonormality and orientation;
/// the unchecked path is reserved for products of rotations.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation identity() { return {}; }

  static Rotation from_matrix(const Mat3& m) {
    if (!m.allFinite() || geom::orthonormality_error(m) > geom::kOrthoTol ||
        std::abs(m.determinant() - 1.0) > geom::kOrthoTol) {
      throw NotNearRotation("matrix is not a rotation");
    }
    return Rotation(m);
  }

  static Rotation from_matrix_unchecked(const Mat3& m) { return Rotation(m); }

  // Elemental rotation matrices about the x (roll), y (pitch) and z (yaw)
  // axes, in the usual right-handed form.
  static Rotation roll(double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    Mat3 m;
    m << 1.0, 0.0, 0.0,
         0.0, c, -s,
         0.0, s, c;
    return Rotation(m);
  }

  static Rotation pitch(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Mat3 m;
    m << c, 0.0, s,
         0.0, 1.0, 0.0,
         -s, 0.0, c;
    return Rotation(m);
  }

  static Rotation yaw(double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    Mat3 m;
    m << c, -s, 0.0,
         s, c, 0.0,
         0.0, 0.0, 1.0;
    return Rotation(m);
  }

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return Rotation(m_.transpose()); }

  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation operator*(const Rotation& other) const {
    return Rotation(m_ * other.m_);
  }

  friend bool operator==(const Rotation& a, const Rotation& b) {
    return a.m_ == b.m_;
  }

 private:
  explicit Rotation(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

namespace geom {

/// exp(-[w]x dt) * R, exact for angular velocity held constant over dt.
inline Rotation rodrigues_step(const Vec3& omega, double dt, const Rotation& r) {
  const Vec3 axis_angle = -omega * dt;
  const double theta = axis_angle.norm();
  if (theta == 0.0) return r;
  const Mat3 k = skew(axis_angle / theta);
  const Mat3 e = Mat3::Identity() + std::sin(theta) * k +
                 (1.0 - std::cos(theta)) * (k * k);
  return Rotation::from_matrix_unchecked(e * r.matrix());
}

/// Nearest rotation (orthogonal polar factor) to `m`.
///
/// Uses the scaled Newton iteration X <- (g X + X^{-T} / g) / 2. Throws
/// NotNearRotation when `m` is farther than 0.1 (Frobenius) from SO(3).
inline Rotation project_so3(const Mat3& m) {
  if (!m.allFinite() || m.determinant() <= 0.0) {
    throw NotNearRotation("matrix has non-positive determinant");
  }
  Mat3 x = m;
  for (int it = 0; it < 100; ++it) {
    const Mat3 inv_t = x.inverse().transpose();
    const double gamma = std::sqrt(inv_t.norm() / x.norm());
    const Mat3 next = 0.5 * (gamma * x + inv_t / gamma);
    const double delta = (next - x).norm();
    x = next;
    if (delta < 1e-15) break;
  }
  // One unscaled step settles the last bits.
  x = 0.5 * (x + x.inverse().transpose());
  if ((m - x).norm() > kNearRotationTol) {
    throw NotNearRotation("matrix is farther than 0.1 from SO(3)");
  }
  return Rotation::from_matrix_unchecked(x);
}

/// Angle between the thrust axis and the desired direction x3, in [0, pi].
inline double tilt_error(const Vec3& x3) {
  require_unit(x3, "tilt_error");
  return std::acos(std::clamp(zeta().dot(x3), -1.0, 1.0));
}

}  // namespace geom
}  // namespace s2track

#endif  // S2TRACK_GEOM_HPP
