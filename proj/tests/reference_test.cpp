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
#include <limits>
#include <numbers>
#include <vector>

#include "s2track/reference.hpp"
#include "test_util.hpp"

namespace s2track {
namespace {

using reference::d_vector;
using reference::eval;

TEST(Reference, PaperLineStartsAtOneMetreAltitude) {
  const RefSample s = eval(reference::PaperLine{}, 0.0);
  EXPECT_EQ(s.p, Vec3(0, 0, 1));
  // 0.6 * 2 pi / 10
  EXPECT_NEAR(s.v.x(), 0.38, 1e-15);
  EXPECT_NEAR(s.v.y(), 0.37699111843077515, 1e-15);
  EXPECT_EQ(s.v.z(), 0.0);
  EXPECT_TRUE(s.a.isZero(1e-15));
}

TEST(Reference, PaperLineFormula) {
  for (double t : {0.3, 2.5, 7.1, 19.9}) {
    const RefSample s = eval(reference::PaperLine{}, t);
    EXPECT_NEAR(s.p.x(), 0.38 * t, 1e-14);
    EXPECT_NEAR(s.p.y(), 0.6 * std::sin(2 * std::numbers::pi * t / 10), 1e-14);
    EXPECT_EQ(s.p.z(), 1.0);
  }
}

TEST(Reference, HoverHasNoDerivatives) {
  const reference::Hover h{Vec3(1, -2, 3)};
  for (double t : {0.0, 1.0, 100.0}) {
    const RefSample s = eval(h, t);
    EXPECT_EQ(s.p, h.p);
    EXPECT_TRUE(s.v.isZero(0.0) && s.a.isZero(0.0) && s.j.isZero(0.0));
  }
}

TEST(DVector, HoverIsGravity) {
  EXPECT_EQ(d_vector(eval(reference::Hover{}, 3.0), 9.8), Vec3(0, 0, 9.8));
}

TEST(DVector, PaperLineAtStartAndAtSineExtremum) {
  EXPECT_LT((d_vector(eval(reference::PaperLine{}, 0.0)) - Vec3(0, 0, 9.8)).norm(), 1e-15);
  // -0.6 (2 pi / 10)^2
  const Vec3 d = d_vector(eval(reference::PaperLine{}, 2.5));
  EXPECT_NEAR(d.x(), 0.0, 1e-15);
  EXPECT_NEAR(d.y(), -0.23687050562614456, 1e-14);
  EXPECT_NEAR(d.z(), 9.8, 1e-15);
}

TEST(Reference, DerivativesMatchCentralDifferences) {
  const std::vector<reference::TrajectorySpec> specs = {
      reference::Hover{}, reference::PaperLine{}, reference::Figure8{},
      reference::PaperLine{1.0, 2.0, 3.0, 4.0}, reference::Figure8{2.0, 1.5, 5.0, 2.0}};
  const double h = 1e-4;
  for (const auto& spec : specs) {
    for (int i = 0; i < 50; ++i) {
      const double t = testing::uniform(h, 30.0);
      const RefSample m = eval(spec, t - h), c = eval(spec, t), p = eval(spec, t + h);
      EXPECT_LT(((p.p - m.p) / (2 * h) - c.v).norm(), 1e-5);
      EXPECT_LT(((p.v - m.v) / (2 * h) - c.a).norm(), 1e-5);
      EXPECT_LT(((p.a - m.a) / (2 * h) - c.j).norm(), 1e-5);
    }
  }
}

TEST(Reference, PaperLineKeepsThrustBoundedAwayFromZero) {
  double min_norm = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 10000; ++i) {
    const double t = 10.0 * i / 10000.0;
    min_norm = std::min(min_norm, d_vector(eval(reference::PaperLine{}, t)).norm());
  }
  EXPECT_GE(min_norm, 9.5);
}

TEST(Reference, Figure8IsPlanarAtAltitude) {
  const reference::Figure8 f8;
  const RefSample s = eval(f8, 1.234);
  EXPECT_EQ(s.p.z(), f8.alt);
  EXPECT_EQ(s.v.z(), 0.0);
  // Back to the start after one period.
  EXPECT_LT((eval(f8, f8.period).p - eval(f8, 0.0).p).norm(), 1e-12);
}

TEST(Reference, ValidateRejectsNonPositivePeriod) {
  EXPECT_THROW(reference::validate(reference::PaperLine{0.38, 0.6, 0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(reference::validate(reference::Figure8{1, 1, -1, 1}), InvalidArgument);
  EXPECT_NO_THROW(reference::validate(reference::PaperLine{}));
}

}  // namespace
}  // namespace s2track
