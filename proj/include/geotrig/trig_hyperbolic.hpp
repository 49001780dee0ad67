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

// Hyperbolic trigonometric functions of an antinorm unit ball: cosh_O t and
// sinh_O t are the coordinates of the boundary point omega such that twice
// the area of the contour O, omega_0, omega is t, together with the angle
// correspondence with the antipolar body.

#ifndef GEOTRIG_TRIG_HYPERBOLIC_HPP_
#define GEOTRIG_TRIG_HYPERBOLIC_HPP_

#include <memory>
#include <optional>
#include <utility>

#include "geotrig/convex_bodies.hpp"
#include "geotrig/geometry.hpp"

namespace geotrig {

class HyperChart;

struct HyperOptions {
  // Base point on the boundary; defaults to the closest point to 0.
  std::optional<Vec2> base_point;
  // Accept bodies failing the no-boundary-ray or asymptote properties. The
  // angle then saturates at finite values where the boundary runs along a ray.
  bool allow_degenerate = false;
};

struct HyperCoords {
  double R = 0;
  double theta = 0;
};

class HyperTrig {
 public:
  explicit HyperTrig(ConeBody body, HyperOptions options = {});

  const ConeBody& body() const { return body_; }
  const ConeBody& antipolar_body() const { return dual_body_; }
  Vec2 base_point() const { return base_; }
  Vec2 dual_base() const { return dual_base_; }

  // Open angle intervals; endpoints may be infinite.
  Interval domain() const;
  Interval dual_domain() const;

  // (cosh_O theta, sinh_O theta). Throws OutOfDomain outside the domain.
  Vec2 eval(double theta) const;
  // (cosh_O^ eta, sinh_O^ eta) on the antipolar body, in (p, q) coordinates.
  Vec2 eval_dual(double eta) const;

  // Angle of the boundary point on the ray through x (x inside the cone).
  double theta_of_direction(const Vec2& x) const;
  double eta_of_direction(const Vec2& w) const;

  // eta with cosh theta cosh^ eta - sinh theta sinh^ eta = 1.
  Interval correspondence(double theta) const;
  // theta with the same equality for a dual angle eta.
  Interval inverse_correspondence(double eta) const;

  // (d cosh / d theta, d sinh / d theta) = (sinh^ eta, cosh^ eta). Throws
  // NonUniqueSupport at corners.
  Vec2 derivative(double theta) const;
  // Left and right derivatives; they differ only at corners.
  std::pair<Vec2, Vec2> one_sided_derivatives(double theta) const;

  // point = R (cosh_O theta, sinh_O theta). Throws OutsideCone.
  HyperCoords decompose(const Vec2& point) const;

 private:
  ConeBody body_;
  ConeBody dual_body_;
  Vec2 base_;
  Vec2 dual_base_;
  std::shared_ptr<const HyperChart> chart_;
  std::shared_ptr<const HyperChart> dual_chart_;
};

inline Vec2 eval_hyper(const HyperTrig& ev, double theta) { return ev.eval(theta); }
inline Interval domain_of(const HyperTrig& ev) { return ev.domain(); }
inline Interval antipolar_correspondence(const HyperTrig& ev, double theta) {
  return ev.correspondence(theta);
}
inline Vec2 hyper_derivative(const HyperTrig& ev, double theta) { return ev.derivative(theta); }
inline HyperCoords hyper_decompose(const HyperTrig& ev, const Vec2& point) {
  return ev.decompose(point);
}

}  // namespace geotrig

#endif  // GEOTRIG_TRIG_HYPERBOLIC_HPP_
