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
#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <numbers>

#include "s2track/geom.hpp"
#include "test_util.hpp"

namespace s2track {
namespace {

using geom::skew;
using testing::random_rotation;
using testing::random_unit;
using testing::random_vec;

constexpr double kPi = std::numbers::pi;

TEST(Skew, CrossProductWithItselfVanishes) {
  EXPECT_TRUE((skew(zeta()) * zeta()).isZero(0.0));
}

TEST(Skew, RightHandRule) {
  EXPECT_EQ(skew(Vec3::UnitX()) * Vec3::UnitY(), Vec3::UnitZ());
}

TEST(Skew, PropertiesOnRandomSamples) {
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = random_vec(10.0), w = random_vec(10.0);
    EXPECT_TRUE((skew(v) + skew(v).transpose()).isZero(0.0));
    EXPECT_LT((skew(v) * w - v.cross(w)).norm(), 1e-12);
    EXPECT_LT((skew(v) * w + skew(w) * v).norm(), 1e-12);
    const Rotation r = random_rotation();
    EXPECT_LT((r.matrix() * skew(v) * r.matrix().transpose() - skew(r * v)).norm(), 1e-12);
  }
}

// Classical RK4 on the nine entries of R with Rdot = -[w]x R; test-only oracle.
Mat3 integrate_attitude(const Vec3& w, double t, const Mat3& r0, int steps) {
  const Mat3 a = -skew(w);
  const double h = t / steps;
  Mat3 r = r0;
  for (int i = 0; i < steps; ++i) {
    const Mat3 k1 = a * r;
    const Mat3 k2 = a * (r + 0.5 * h * k1);
    const Mat3 k3 = a * (r + 0.5 * h * k2);
    const Mat3 k4 = a * (r + h * k3);
    r += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return r;
}

TEST(Rodrigues, QuarterTurnAboutZ) {
  Mat3 expected;
  expected << 0, 1, 0, -1, 0, 0, 0, 0, 1;
  const Rotation r = geom::rodrigues_step({0, 0, kPi / 2}, 1.0, Rotation::identity());
  EXPECT_LT((r.matrix() - expected).norm(), 1e-15);
  const Mat3 oracle = integrate_attitude({0, 0, kPi / 2}, 1.0, Mat3::Identity(), 2000);
  EXPECT_LT((oracle - expected).norm(), 1e-12);
}

TEST(Rodrigues, MatchesNumericalIntegrationForRandomInputs) {
  for (int i = 0; i < 20; ++i) {
    const Vec3 w = random_vec(3.0);
    const Rotation r0 = random_rotation();
    const double dt = testing::uniform(0.01, 1.0);
    const Rotation r = geom::rodrigues_step(w, dt, r0);
    EXPECT_LT((r.matrix() - integrate_attitude(w, dt, r0.matrix(), 4000)).norm(), 1e-11);
  }
}

TEST(Rodrigues, ZeroRateIsIdentity) {
  EXPECT_EQ(geom::rodrigues_step(Vec3::Zero(), 0.37, Rotation::identity()).matrix(),
            Mat3::Identity());
}

TEST(Rodrigues, StaysOnSO3) {
  for (int i = 0; i < 1000; ++i) {
    const Rotation r0 = random_rotation();
    const Rotation r = geom::rodrigues_step(random_vec(20.0), testing::uniform(1e-4, 1.0), r0);
    EXPECT_LT(geom::orthonormality_error(r.matrix()), 1e-12 + geom::orthonormality_error(r0.matrix()));
    EXPECT_NEAR(r.matrix().determinant(), 1.0, 1e-12);
  }
}

Mat3 svd_polar(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

TEST(ProjectSO3, IdentityIsFixedPoint) {
  EXPECT_LT((geom::project_so3(Mat3::Identity()).matrix() - Mat3::Identity()).norm(), 1e-15);
}

TEST(ProjectSO3, RemovesUniformScaling) {
  const Rotation r = random_rotation();
  const Rotation p = geom::project_so3(1.001 * r.matrix());
  EXPECT_LT((p.matrix() - r.matrix()).norm(), 1e-14);
}

TEST(ProjectSO3, MatchesSvdPolarFactor) {
  for (int i = 0; i < 200; ++i) {
    const Rotation r = random_rotation();
    Mat3 noise = Mat3::Random() * 1e-6;
    const Mat3 m = r.matrix() + noise;
    const Rotation p = geom::project_so3(m);
    EXPECT_LT((p.matrix() - svd_polar(m)).norm(), 1e-13);
    EXPECT_LT((p.matrix() - r.matrix()).norm(), 1e-5);
    EXPECT_LT(geom::orthonormality_error(p.matrix()), 1e-14);
    EXPECT_NEAR(p.matrix().determinant(), 1.0, 1e-14);
  }
}

TEST(ProjectSO3, RejectsFarMatrices) {
  EXPECT_THROW(geom::project_so3(2.0 * Mat3::Identity()), NotNearRotation);
  EXPECT_THROW(geom::project_so3(-Mat3::Identity()), NotNearRotation);
  EXPECT_THROW(geom::project_so3(Mat3::Zero()), NotNearRotation);
}

TEST(Rotation, FromMatrixValidates) {
  EXPECT_NO_THROW(Rotation::from_matrix(random_rotation().matrix()));
  EXPECT_THROW(Rotation::from_matrix(1.01 * Mat3::Identity()), NotNearRotation);
  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1.0;
  EXPECT_THROW(Rotation::from_matrix(reflect), NotNearRotation);
}

TEST(Rotation, ElementalRotationsAreRightHanded) {
  EXPECT_LT((Rotation::roll(kPi / 2) * Vec3::UnitY() - Vec3::UnitZ()).norm(), 1e-15);
  EXPECT_LT((Rotation::pitch(kPi / 2) * Vec3::UnitZ() - Vec3::UnitX()).norm(), 1e-15);
  EXPECT_LT((Rotation::yaw(kPi / 2) * Vec3::UnitX() - Vec3::UnitY()).norm(), 1e-15);
}

TEST(TiltError, ReferenceAngles) {
  EXPECT_EQ(geom::tilt_error(zeta()), 0.0);
  EXPECT_NEAR(geom::tilt_error(Vec3::UnitX()), kPi / 2, 1e-15);
  EXPECT_NEAR(geom::tilt_error(-zeta()), kPi, 1e-15);
}

TEST(TiltError, ClampsRoundingAtThePoles) {
  EXPECT_EQ(geom::tilt_error(Vec3(0, 0, 1.0 + 1e-12)), 0.0);
  EXPECT_NEAR(geom::tilt_error(Vec3(0, 0, -1.0 - 1e-12)), kPi, 1e-15);
}

TEST(TiltError, RejectsNonUnit) {
  EXPECT_THROW(geom::tilt_error(Vec3(0, 0, 1.1)), NotUnit);
}

// The three relations used to simplify the derivative of the composite function.
TEST(ZetaIdentities, HoldOnRandomSamples) {
  const Vec3 z = zeta();
  const Mat3 lateral = Mat3::Identity() - z * z.transpose();
  for (int i = 0; i < 10000; ++i) {
    const Vec3 x3 = random_unit();
    const Vec3 lam = random_vec(10.0);
    const double cz = z.dot(x3);
    EXPECT_NEAR(lam.dot(z - x3), (1 - cz) * z.dot(lam) - x3.dot(lateral * lam), 1e-12);
    const Eigen::RowVector3d lhs = z.transpose() * skew(x3) * skew(z);
    const Eigen::RowVector3d rhs = x3.transpose() * lateral;
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
    EXPECT_NEAR(x3.dot(lateral * x3), (1 + cz) * (1 - cz), 1e-12);
  }
}

}  // namespace
}  // namespace s2track
