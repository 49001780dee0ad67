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

// Area-parametrized trigonometric functions of a compact convex body: the
// boundary point (cos_O t, sin_O t) whose sector from the positive x-ray has
// doubled area t, and the correspondence with the angles of the polar body.

#ifndef GEOTRIG_TRIG_COMPACT_HPP_
#define GEOTRIG_TRIG_COMPACT_HPP_

#include <vector>

#include "geotrig/convex_bodies.hpp"
#include "geotrig/geometry.hpp"

namespace geotrig {

// theta <-> polar angle map of one body, periodic with period 2 * area.
class SectorChart {
 public:
  explicit SectorChart(const ConvexBody& body);

  double period() const { return period_; }
  // Lifted: phi + 2 pi k maps to theta + period k.
  double theta_of_angle(double phi) const;
  Vec2 point(double theta) const;
  // Polar angle of point(theta), lifted consistently with theta.
  double angle_of_theta(double theta) const;

 private:
  ConvexBody body_;
  double period_ = 0;
  // Polygon tables: boundary nodes starting on the positive x-axis (closed,
  // the last node repeats the first), their polar angles and cumulative
  // doubled areas.
  std::vector<Vec2> nodes_;
  std::vector<double> node_angle_;
  std::vector<double> node_theta_;
  double quadrant_ = 0;  // lp: doubled area of one quadrant
};

struct PolarCoords {
  double A = 0;
  double theta = 0;
};

struct AngleRates {
  double dtheta = 0;
  double dA = 0;
};

class CompactTrig {
 public:
  explicit CompactTrig(ConvexBody body);

  const ConvexBody& body() const { return body_; }
  const ConvexBody& polar_body() const { return polar_body_; }
  double area() const { return 0.5 * chart_.period(); }
  double period() const { return chart_.period(); }
  double polar_period() const { return polar_chart_.period(); }

  // (cos_O theta, sin_O theta).
  Vec2 eval(double theta) const { return chart_.point(theta); }
  // (cos_O° eta, sin_O° eta).
  Vec2 eval_polar(double eta) const { return polar_chart_.point(eta); }
  double theta_of_angle(double phi) const { return chart_.theta_of_angle(phi); }
  double eta_of_angle(double phi) const { return polar_chart_.theta_of_angle(phi); }

  // The interval of polar angles eta with cos theta cos° eta + sin theta
  // sin° eta = 1, lifted continuously in theta.
  Interval correspondence(double theta) const;
  // The interval of theta for a polar angle eta (the inverse relation).
  Interval inverse_correspondence(double eta) const;

  // point = A (cos_O theta, sin_O theta), theta in [0, period).
  PolarCoords decompose(const Vec2& point) const;
  // Time derivatives of theta and A along a curve through `point`.
  AngleRates theta_dot(const Vec2& point, const Vec2& velocity) const;

 private:
  ConvexBody body_;
  ConvexBody polar_body_;
  SectorChart chart_;
  SectorChart polar_chart_;
};

inline Vec2 eval_trig(const CompactTrig& ev, double theta) { return ev.eval(theta); }
inline Interval polar_correspondence(const CompactTrig& ev, double theta) {
  return ev.correspondence(theta);
}
inline PolarCoords polar_decompose(const CompactTrig& ev, const Vec2& point) {
  return ev.decompose(point);
}
inline AngleRates theta_dot(const CompactTrig& ev, const Vec2& point, const Vec2& velocity) {
  return ev.theta_dot(point, velocity);
}

}  // namespace geotrig

#endif  // GEOTRIG_TRIG_COMPACT_HPP_
