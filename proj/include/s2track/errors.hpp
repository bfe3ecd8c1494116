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
#ifndef S2TRACK_ERRORS_HPP
#define S2TRACK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace s2track {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix expected to be (close to) a rotation is not.
class NotNearRotation : public Error {
 public:
  using Error::Error;
};

/// A vector expected to lie on the unit sphere does not.
class NotUnit : public Error {
 public:
  using Error::Error;
};

/// The virtual control vanished, so its direction is undefined.
class DegenerateThrust : public Error {
 public:
  using Error::Error;
};

/// The thrust direction error reached the antipodal point x3 = -zeta.
class SingularConfiguration : public Error {
 public:
  using Error::Error;
};

/// Position/velocity gains do not give a Hurwitz double integrator.
class NonHurwitz : public Error {
 public:
  using Error::Error;
};

/// Integrated state left the representable range.
class NumericalBlowup : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace s2track

#endif  // S2TRACK_ERRORS_HPP
