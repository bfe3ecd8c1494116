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
#ifndef S2TRACK_REFERENCE_HPP
#define S2TRACK_REFERENCE_HPP

#include <cmath>
#include <numbers>
#include <variant>

#include "s2track/errors.hpp"
#include "s2track/geom.hpp"

namespace s2track {

inline constexpr double kGravity = 9.8;

/// Reference position and its first three time derivatives.
struct RefSample {
  double t = 0.0;
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Vec3 a = Vec3::Zero();
  Vec3 j = Vec3::Zero();
};

namespace reference {

struct Hover {
  Vec3 p{0.0, 0.0, 1.0};
};

/// Constant forward speed along x with a lateral sine in y.
struct PaperLine {
  double vx = 0.38;
  double amp = 0.6;
  double period = 10.0;
  double alt = 1.0;
};

/// Lissajous 1:2 figure-eight in the horizontal plane.
struct Figure8 {
  double amp_x = 1.0;
  double amp_y = 0.5;
  double period = 8.0;
  double alt = 1.0;
};

using TrajectorySpec = std::variant<Hover, PaperLine, Figure8>;

inline void validate(const TrajectorySpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hover>) {
          if (!s.p.allFinite()) throw InvalidArgument("hover point not finite");
        } else {
          if (!(s.period > 0.0) || !std::isfinite(s.period)) {
            throw InvalidArgument("trajectory period must be positive");
          }
        }
      },
      spec);
}

namespace detail {

// a*sin(w t) and its three derivatives
struct SineDerivs {
  double x, dx, ddx, dddx;
};

inline SineDerivs sine(double amp, double w, double t) {
  const double s = std::sin(w * t), c = std::cos(w * t);
  return {amp * s, amp * w * c, -amp * w * w * s, -amp * w * w * w * c};
}

}  // namespace detail

inline RefSample eval(const TrajectorySpec& spec, double t) {
  RefSample out;
  out.t = t;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Hover>) {
          out.p = s.p;
        } else if constexpr (std::is_same_v<T, PaperLine>) {
          const double w = 2.0 * std::numbers::pi / s.period;
          const auto y = detail::sine(s.amp, w, t);
          out.p = {s.vx * t, y.x, s.alt};
          out.v = {s.vx, y.dx, 0.0};
          out.a = {0.0, y.ddx, 0.0};
          out.j = {0.0, y.dddx, 0.0};
        } else {
          const double w = 2.0 * std::numbers::pi / s.period;
          const auto x = detail::sine(s.amp_x, w, t);
          const auto y = detail::sine(s.amp_y, 2.0 * w, t);
          out.p = {x.x, y.x, s.alt};
          out.v = {x.dx, y.dx, 0.0};
          out.a = {x.ddx, y.ddx, 0.0};
          out.j = {x.dddx, y.dddx, 0.0};
        }
      },
      spec);
  return out;
}

/// Gravity plus reference acceleration; the thrust has to dominate this.
inline Vec3 d_vector(const RefSample& s, double g = kGravity) {
  return s.a + zeta() * g;
}

}  // namespace reference
}  // namespace s2track

#endif  // S2TRACK_REFERENCE_HPP
