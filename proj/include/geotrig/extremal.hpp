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

// Pointwise maximization of the Pontryagin Hamiltonian for controls in a cone
// with an antinorm, the normal/abnormal dichotomy, and singular faces.

#ifndef GEOTRIG_EXTREMAL_HPP_
#define GEOTRIG_EXTREMAL_HPP_

#include <optional>

#include "geotrig/convex_bodies.hpp"
#include "geotrig/geometry.hpp"
#include "geotrig/trig_hyperbolic.hpp"

namespace geotrig {

// Band for "on the boundary of the antipolar body".
inline constexpr double kMembershipBand = 1e-9;

struct VerticalState {
  double h1 = 0;
  double h2 = 0;
  double h3 = 0;
};

struct SupResult {
  double value = 0;  // 0 or +infinity
  bool attained_at_zero_only = false;
};

// sup over u in C of <h, u> + nu(u).
SupResult hamiltonian_sup(const ConeBody& body, const Vec2& h);

struct MaximizerSet {
  bool zero_only = true;
  // Maximizing angles theta (controls lambda (cosh theta, sinh theta)) and the
  // dual angle of (-h1, h2) when not zero_only.
  Interval theta;
  double eta = 0;
};

MaximizerSet maximizer_set(const HyperTrig& ev, const Vec2& h);

Face maximizing_face(const ConvexBody& body, const Vec2& h);

enum class ExtremalKind { kTimelikeNormal, kLightlikeAbnormal };

struct ExtremalClass {
  ExtremalKind kind = ExtremalKind::kTimelikeNormal;
  std::optional<int> ray_index;
};

// lambda0 is -1 (normal) or 0 (abnormal).
ExtremalClass classify(const ConeBody& body, const Vec2& h, int lambda0);

}  // namespace geotrig

#endif  // GEOTRIG_EXTREMAL_HPP_
