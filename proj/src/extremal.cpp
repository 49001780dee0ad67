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

#include "geotrig/extremal.hpp"

#include <cmath>
#include <limits>

#include "geotrig/error.hpp"

namespace geotrig {

namespace {

double dual_antinorm(const ConeBody& body, const Vec2& h) {
  if (h.norm() == 0) raise(Errc::kZeroCovector, "zero covector");
  return antipolar(body).antinorm(Vec2(-h.x(), h.y()));
}

}  // namespace

SupResult hamiltonian_sup(const ConeBody& body, const Vec2& h) {
  const double v = dual_antinorm(body, h);
  if (v >= 1 - kMembershipBand) return {0, v > 1 + kMembershipBand};
  return {std::numeric_limits<double>::infinity(), false};
}

MaximizerSet maximizer_set(const HyperTrig& ev, const Vec2& h) {
  const Vec2 w(-h.x(), h.y());
  const double v = dual_antinorm(ev.body(), h);
  if (v < 1 - kMembershipBand) raise(Errc::kNotSeparating, "(-h1, h2) is outside the antipolar set");
  MaximizerSet out;
  if (v > 1 + kMembershipBand) return out;
  out.zero_only = false;
  out.eta = ev.eta_of_direction(w);
  out.theta = ev.inverse_correspondence(out.eta);
  return out;
}

Face maximizing_face(const ConvexBody& body, const Vec2& h) { return body.face(h); }

ExtremalClass classify(const ConeBody& body, const Vec2& h, int lambda0) {
  if (h.norm() == 0) raise(Errc::kZeroCovector, "zero covector");
  if (lambda0 == -1) {
    if (dual_antinorm(body, h) < 1 - kMembershipBand) {
      raise(Errc::kNotSeparating, "normal covector with (-h1, h2) outside the antipolar set");
    }
    return {ExtremalKind::kTimelikeNormal, std::nullopt};
  }
  if (lambda0 != 0) raise(Errc::kInvalidInput, "lambda0 must be 0 or -1");
  const Vec2 u = h.normalized();
  for (int k = 0; k < 2; ++k) {
    const Vec2 n = body.dual_ray_direction(k);
    if (std::abs(cross(u, n)) <= kMembershipBand && u.dot(n) > 0) {
      return {ExtremalKind::kLightlikeAbnormal, k};
    }
  }
  raise(Errc::kInconsistent, "abnormal covector is not on the boundary of the dual cone");
}

}  // namespace geotrig
