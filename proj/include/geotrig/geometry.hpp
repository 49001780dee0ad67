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

#ifndef GEOTRIG_GEOMETRY_HPP_
#define GEOTRIG_GEOMETRY_HPP_

#include <Eigen/Core>
#include <cmath>
#include <numbers>

namespace geotrig {

using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double cross(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Counterclockwise quarter turn.
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

inline Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return Vec2(c * v.x() - s * v.y(), s * v.x() + c * v.y());
}

// (p, q) -> (p, -q). The antipolar pairing px - qy is <flip(w), x>.
inline Vec2 flip(const Vec2& v) { return Vec2(v.x(), -v.y()); }

inline Vec2 unit(double angle) { return Vec2(std::cos(angle), std::sin(angle)); }

// Polar angle in [0, 2pi).
inline double angle_0_2pi(const Vec2& v) {
  double a = std::atan2(v.y(), v.x());
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// Closed interval of angles. A singleton has lo == hi.
struct Interval {
  double lo = 0;
  double hi = 0;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool is_singleton(double tol = 1e-12) const { return hi - lo <= tol; }
  bool contains(double x, double tol = 0) const {
    return x >= lo - tol && x <= hi + tol;
  }
};

}  // namespace geotrig

#endif  // GEOTRIG_GEOMETRY_HPP_
