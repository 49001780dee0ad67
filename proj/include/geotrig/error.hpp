// Copyright 2026 The Geotrig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GEOTRIG_ERROR_HPP_
#define GEOTRIG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace geotrig {

enum class Errc {
  kInvalidBody,
  kInvalidInput,
  kEmptyAntipolar,
  kOriginPoint,
  kNonUniqueSupport,
  kOutOfDomain,
  kOutsideCone,
  kZeroCovector,
  kNotSeparating,
  kInconsistent,
  kInvalidFamilyParams,
  kNotSingularAngle,
  kHorizontalFacetAbsent,
  kQuadratureBlowup,
  kEnergyViolation,
  kStuckAtEquality,
  kTooManySwitches,
  kSingularArcEncountered,
};

std::string_view errc_name(Errc code);

// Domain error raised by every library operation. The CLI maps it to exit
// code 1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace geotrig

#endif  // GEOTRIG_ERROR_HPP_
