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

#include <cmath>
#include <vector>

#include "s2track/lyapunov.hpp"
#include "test_util.hpp"

namespace s2track {
namespace {

using namespace lyapunov;

const Mat6& nominal_P() {
  static const Mat6 p = PositionGains::nominal().P;
  return p;
}

TEST(CompositeV, ZeroAtEquilibrium) {
  EXPECT_EQ(composite_V(Vec3::Zero(), Vec3::Zero(), zeta(), nominal_P(), 0.05), 0.0);
}

TEST(CompositeV, TiltBarrierAtRightAngle) {
  // (1 - 0) / (2 * 0.05 * 1)
  EXPECT_NEAR(composite_V(Vec3::Zero(), Vec3::Zero(), Vec3::UnitX(), nominal_P(), 0.05), 10.0,
              1e-14);
}

TEST(CompositeV, QuadraticPart) {
  EXPECT_NEAR(composite_V({1, 0, 0}, Vec3::Zero(), zeta(), nominal_P(), 0.05), 1.5, 1e-15);
}

TEST(CompositeV, PositiveAwayFromEquilibrium) {
  for (int i = 0; i < 1000; ++i) {
    const Vec3 x3 = testing::random_unit();
    if (1 + x3.z() < 1e-3) continue;
    const double v =
        composite_V(testing::random_vec(3), testing::random_vec(3), x3, nominal_P(), 0.05);
    EXPECT_GT(v, 0.0);
    EXPECT_GE(tilt_part(x3, 0.05), 0.0);
  }
}

TEST(CompositeV, SingularAtAntipode) {
  EXPECT_THROW(composite_V(Vec3::Zero(), Vec3::Zero(), -zeta(), nominal_P(), 0.05),
               SingularConfiguration);
}

TEST(VdotAnalytic, Examples) {
  EXPECT_EQ(vdot_analytic(Vec3::Zero(), Vec3::Zero(), zeta(), 1.5, 0.05), 0.0);
  EXPECT_NEAR(vdot_analytic({1, 0, 0}, Vec3::Zero(), zeta(), 1.5, 0.05), -1.0, 1e-15);
  EXPECT_NEAR(vdot_analytic(Vec3::Zero(), Vec3::Zero(), Vec3::UnitY(), 1.5, 0.05), -30.0,
              1e-13);
  EXPECT_THROW(vdot_analytic(Vec3::Zero(), Vec3::Zero(), -zeta(), 1.5, 0.05),
               SingularConfiguration);
}

// xi'((A-BK)'P + P(A-BK))xi = -|xi|^2 for the nominal gains.
TEST(VdotAnalytic, QuadraticPartMatchesLyapunovEquation) {
  const PositionGains g = PositionGains::nominal();
  const Mat6 a = controller::closed_loop_matrix(g.K);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x1 = testing::random_vec(3), x2 = testing::random_vec(3);
    const Vec6 xi = controller::stack(x1, x2);
    const double direct = xi.dot((a.transpose() * g.P + g.P * a) * xi);
    EXPECT_NEAR(direct, vdot_analytic(x1, x2, zeta(), 1.5, 0.05), 1e-11);
  }
}

TEST(ExpBound, Values) {
  const double alpha = PositionGains::nominal().alpha;
  EXPECT_EQ(exp_bound(7.0, alpha, 1.5, 0.0), 7.0);
  EXPECT_NEAR(decay_rate(alpha, 1.5), 0.6609318731760276, 1e-12);
  EXPECT_EQ(decay_rate(5.0, 1.5), 3.0);
  EXPECT_NEAR(exp_bound(10.0, alpha, 1.5, 10.0), 0.01347750016000784, 1e-12);
}

TEST(Assumption1Monitor, HoverLevelThrustPasses) {
  const std::vector<double> t{0, 1, 2}, u{9.8, 9.8, 9.8};
  const auto r = assumption1_monitor(t, u);
  EXPECT_EQ(r.min_u_norm, 9.8);
  EXPECT_TRUE(r.warn_times.empty());
  EXPECT_TRUE(r.pass);
}

TEST(Assumption1Monitor, LowThrustWarns) {
  const std::vector<double> t{0, 1, 2}, u{0.05, 0.05, 0.05};
  const auto r = assumption1_monitor(t, u);
  EXPECT_EQ(r.warn_times.size(), 3u);
  EXPECT_TRUE(r.pass);
}

TEST(Assumption1Monitor, VanishingThrustFails) {
  const std::vector<double> t{0, 1, 2}, u{9.8, 1e-7, 9.8};
  const auto r = assumption1_monitor(t, u);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.min_u_time, 1.0);
}

TEST(Assumption1Monitor, SizeMismatch) {
  const std::vector<double> t{0, 1}, u{1.0};
  EXPECT_THROW(assumption1_monitor(t, u), InvalidArgument);
}

std::vector<CertificateSample> series(const std::vector<double>& values) {
  std::vector<CertificateSample> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    CertificateSample s;
    s.t = 0.01 * static_cast<double>(i);
    s.V = values[i];
    out.push_back(s);
  }
  return out;
}

TEST(MonotoneCheck, AcceptsDecreaseAndTinyRoundoff) {
  const auto r = monotone_check(series({10, 5, 5 + 4e-4, 1, 0.5, 0.5 + 0.5e-4}));
  EXPECT_TRUE(r.monotone);
  EXPECT_EQ(r.violations, 0u);
}

TEST(MonotoneCheck, FlagsIncrease) {
  const auto r = monotone_check(series({10, 9, 9.1, 8}));
  EXPECT_FALSE(r.monotone);
  EXPECT_EQ(r.violations, 1u);
  EXPECT_NEAR(r.first_violation_time, 0.02, 1e-15);
}

TEST(MonotoneCheck, SkipsFlaggedSamples) {
  auto s = series({10, 9, 20, 8});
  s[2].flags.singular = true;
  EXPECT_TRUE(monotone_check(s).monotone);
}

TEST(EnvelopeCheck, ExactExponentialIsWithin) {
  std::vector<double> v;
  for (int i = 0; i < 100; ++i) v.push_back(10.0 * std::exp(-0.7 * 0.01 * i));
  const auto r = envelope_check(series(v), 0.7, 1.5);
  EXPECT_TRUE(r.within);
  EXPECT_NEAR(r.worst_ratio, 1.0, 1e-12);
  const auto slow = envelope_check(series(v), 2.0, 1.5);
  EXPECT_FALSE(slow.within);
}

TEST(Certificate, SplitsIntoParts) {
  Gains g;
  QuadState s;
  s.p = Vec3(1, -1, 2);
  s.v = Vec3(0.3, 0, 0);
  s.R = Rotation::roll(0.4);
  const auto c = controller::control(s, reference::eval(reference::PaperLine{}, 1.0), g);
  const CertificateSample cs = certificate(1.0, c, g);
  EXPECT_NEAR(cs.V, cs.V_xi + cs.V_tilt, 1e-14);
  EXPECT_NEAR(cs.V, composite_V(c.error.x1, c.error.x2, c.error.x3, g.position.P, 0.05), 1e-12);
  EXPECT_NEAR(cs.Vdot_analytic,
              vdot_analytic(c.error.x1, c.error.x2, c.error.x3, c.diag.kappa1, 0.05), 1e-12);
  EXPECT_FALSE(cs.flags.any());
}

}  // namespace
}  // namespace s2track
