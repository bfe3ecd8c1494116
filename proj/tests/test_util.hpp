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
#ifndef S2TRACK_TESTS_TEST_UTIL_HPP
#define S2TRACK_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <numbers>
#include <random>

#include "s2track/geom.hpp"

namespace s2track::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed2u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Vec3 random_vec(double scale = 1.0) {
  return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

inline Vec3 random_unit() {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v;
  do {
    v = {n(rng()), n(rng()), n(rng())};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

/// Random rotation from a uniformly drawn unit quaternion.
inline Rotation random_rotation() {
  std::normal_distribution<double> n(0.0, 1.0);
  double w, x, y, z, s;
  do {
    w = n(rng()), x = n(rng()), y = n(rng()), z = n(rng());
    s = std::sqrt(w * w + x * x + y * y + z * z);
  } while (s < 1e-6);
  w /= s, x /= s, y /= s, z /= s;
  Mat3 m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return Rotation::from_matrix(m);
}

}  // namespace s2track::testing

#endif  // S2TRACK_TESTS_TEST_UTIL_HPP
