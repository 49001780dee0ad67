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

#include "geotrig/error.hpp"

namespace geotrig {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidBody: return "InvalidBody";
    case Errc::kInvalidInput: return "InvalidInput";
    case Errc::kEmptyAntipolar: return "EmptyAntipolar";
    case Errc::kOriginPoint: return "OriginPoint";
    case Errc::kNonUniqueSupport: return "NonUniqueSupport";
    case Errc::kOutOfDomain: return "OutOfDomain";
    case Errc::kOutsideCone: return "OutsideCone";
    case Errc::kZeroCovector: return "ZeroCovector";
    case Errc::kNotSeparating: return "NotSeparating";
    case Errc::kInconsistent: return "Inconsistent";
    case Errc::kInvalidFamilyParams: return "InvalidFamilyParams";
    case Errc::kNotSingularAngle: return "NotSingularAngle";
    case Errc::kHorizontalFacetAbsent: return "HorizontalFacetAbsent";
    case Errc::kQuadratureBlowup: return "QuadratureBlowup";
    case Errc::kEnergyViolation: return "EnergyViolation";
    case Errc::kStuckAtEquality: return "StuckAtEquality";
    case Errc::kTooManySwitches: return "TooManySwitches";
    case Errc::kSingularArcEncountered: return "SingularArcEncountered";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace geotrig
