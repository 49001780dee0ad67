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

// Planar convex sets used as control sets: compact bodies with the origin in
// the interior (Finsler unit balls) and unbounded, origin-avoiding bodies with
// the ray property (antinorm unit balls), together with their duals.

#ifndef GEOTRIG_CONVEX_BODIES_HPP_
#define GEOTRIG_CONVEX_BODIES_HPP_

#include <variant>
#include <vector>

#include "geotrig/geometry.hpp"

namespace geotrig {

struct PolygonDescriptor {
  std::vector<Vec2> vertices;
};
struct EllipseDescriptor {
  double a = 1;
  double b = 1;
};
// p may be +infinity (the square).
struct LpBallDescriptor {
  double p = 2;
};
struct RadialSamplesDescriptor {
  std::vector<double> phi;
  std::vector<double> r;
};

using CompactDescriptor = std::variant<PolygonDescriptor, EllipseDescriptor,
                                       LpBallDescriptor, RadialSamplesDescriptor>;

// A boundary face: a point when a == b, otherwise the segment [a, b] in
// counterclockwise order.
struct Face {
  Vec2 a;
  Vec2 b;

  bool is_point(double tol = 1e-12) const { return (a - b).norm() <= tol; }
  Vec2 mid() const { return 0.5 * (a + b); }
};

// Compact convex body with 0 in the interior. Polygons and radial samples
// (joined by chords) share the polygon representation; lp balls with p = 2
// use the ellipse fast path and p in {1, inf} become polygons.
class ConvexBody {
 public:
  enum class Shape { kPolygon, kEllipse, kLp };

  explicit ConvexBody(CompactDescriptor descriptor);

  static ConvexBody polygon(std::vector<Vec2> vertices);
  static ConvexBody ellipse(double a, double b);
  static ConvexBody lp_ball(double p);
  static ConvexBody radial_samples(std::vector<double> phi, std::vector<double> r);
  static ConvexBody unit_disc() { return ellipse(1, 1); }

  const CompactDescriptor& descriptor() const { return descriptor_; }
  Shape shape() const { return shape_; }

  // Minkowski functional.
  double gauge(const Vec2& x) const;
  double radial(double phi) const;
  Vec2 boundary_point(double phi) const;
  // max over the body of <dir, x>.
  double support(const Vec2& dir) const;
  Face face(const Vec2& dir) const;
  double area() const;
  // Outward normals at a boundary point, scaled so that <w, point> = 1; the
  // two entries differ only at polygon corners (counterclockwise order).
  std::pair<Vec2, Vec2> normal_covectors(const Vec2& boundary_point) const;

  // Polygon shape only: counterclockwise vertices and, for edge i from
  // vertices[i] to vertices[i + 1], the covector w_i with <w_i, x> = 1 on it.
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Vec2>& edge_covectors() const { return edge_covectors_; }

  double semi_axis_a() const { return a_; }
  double semi_axis_b() const { return b_; }
  double exponent() const { return p_; }

 private:
  void init_polygon(std::vector<Vec2> vertices);

  CompactDescriptor descriptor_;
  Shape shape_ = Shape::kPolygon;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> edge_covectors_;
  double a_ = 1;
  double b_ = 1;
  double p_ = 2;
};

double minkowski_functional(const ConvexBody& body, const Vec2& point);

// Exact polar set: ellipse <-> ellipse, lp <-> lq, polygon vertex <-> edge.
ConvexBody polar(const ConvexBody& body);

// max over sampled unit directions of |h_A(u) - h_B(u)|, which is the
// Hausdorff distance for convex bodies.
double hausdorff(const ConvexBody& a, const ConvexBody& b, int resolution = 4096);

struct AlphaHyperbolaDescriptor {
  double alpha = 2;
  double rotation = 0;
};
struct RaySegmentDescriptor {
  Vec2 p0;
  Vec2 p1;
};
// Chord-interpolated samples; the two end chords are extended to rays.
struct ConeRadialSamplesDescriptor {
  std::vector<double> phi;
  std::vector<double> r;
};
// conv(vertices) + cone(ray0, ray1); vertices by increasing polar angle, ray0
// issued from the first vertex, ray1 from the last.
struct PolylineDescriptor {
  std::vector<Vec2> vertices;
  Vec2 ray0;
  Vec2 ray1;
};

using ConeDescriptor =
    std::variant<AlphaHyperbolaDescriptor, RaySegmentDescriptor,
                 ConeRadialSamplesDescriptor, PolylineDescriptor>;

// Closed convex set avoiding the origin with the ray property, i.e. the unit
// ball {nu >= 1} of an antinorm nu. Alpha hyperbolas
// {x >= (1 + |y|^alpha)^(1/alpha)} (optionally rotated) are handled in closed
// form, everything else as a polyline with two asymptote rays.
class ConeBody {
 public:
  enum class Shape { kAlphaHyperbola, kPolyline };

  explicit ConeBody(ConeDescriptor descriptor, double r_max = 1e6);

  static ConeBody alpha_hyperbola(double alpha, double rotation = 0);
  static ConeBody ray_segment(const Vec2& p0, const Vec2& p1);
  static ConeBody radial_samples(std::vector<double> phi, std::vector<double> r);
  static ConeBody polyline(std::vector<Vec2> vertices, const Vec2& ray0,
                           const Vec2& ray1);
  // The classical hyperbola branch x^2 - y^2 >= 1, x > 0.
  static ConeBody omega2() { return alpha_hyperbola(2); }

  const ConeDescriptor& descriptor() const { return descriptor_; }
  Shape shape() const { return shape_; }
  double r_max() const { return r_max_; }
  // True for sampled descriptors whose structural checks are approximate.
  bool sampled() const { return sampled_; }

  // Boundary rays l_0, l_1 of the cone C at angles phi0 < phi1 < phi0 + pi.
  double phi0() const { return phi0_; }
  double phi1() const { return phi1_; }
  Vec2 ray_direction(int k) const { return unit(k == 0 ? phi0_ : phi1_); }
  // Unit generators of the dual cone C* = {h : <h, u> <= 0 on C}; n_k is
  // orthogonal to l_k.
  Vec2 dual_ray_direction(int k) const;
  bool in_cone(const Vec2& x, double tol = 0) const;

  // -infinity outside C; on the boundary of C the closure value.
  double antinorm(const Vec2& x) const;
  // Distance from the origin to the boundary along direction phi; +infinity
  // when the ray never enters the body.
  double radial(double phi) const;
  Vec2 closest_point() const { return closest_; }
  double min_radius() const { return closest_.norm(); }

  // Alpha shape: frame coordinates are world coordinates rotated by
  // -rotation; the boundary is parametrized by the frame ordinate y.
  double alpha() const { return alpha_; }
  double rotation() const { return rotation_; }
  Vec2 to_frame(const Vec2& x) const { return rotate(x, -rotation_); }
  Vec2 from_frame(const Vec2& x) const { return rotate(x, rotation_); }
  double alpha_abscissa(double y) const;
  Vec2 alpha_point(double y) const;
  Vec2 alpha_tangent(double y) const;

  // Polyline shape.
  const std::vector<Vec2>& vertices() const { return vertices_; }
  Vec2 ray0() const { return ray_direction(0); }
  Vec2 ray1() const { return ray_direction(1); }
  // |cross(l_k, end vertex)|: distance between the end ray and l_k.
  double end_offset(int k) const;
  // Covectors w_j with body = C cap {<w_j, x> >= 1}, in boundary order (one
  // per edge and one per end ray that misses the origin).
  const std::vector<Vec2>& facet_covectors() const { return facets_; }
  // Offset below which an end ray counts as lying on l_k.
  double through_origin_tol() const;

 private:
  friend ConeBody antipolar(const ConeBody& body);
  void init_polyline(std::vector<Vec2> vertices, Vec2 ray0, Vec2 ray1);

  ConeDescriptor descriptor_;
  Shape shape_ = Shape::kAlphaHyperbola;
  double r_max_ = 1e6;
  bool sampled_ = false;
  double phi0_ = 0;
  double phi1_ = 0;
  Vec2 closest_{1, 0};
  double alpha_ = 2;
  double rotation_ = 0;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> facets_;
};

double antinorm_eval(const ConeBody& body, const Vec2& point);
Vec2 closest_point(const ConeBody& body);

// Omega^dia = {(p, q) : px - qy >= 1 on Omega}. Exact for both shapes.
ConeBody antipolar(const ConeBody& body);

struct PropertyReport {
  bool i = false;          // ray property and convexity
  bool star = false;       // no ray from the origin lies on the boundary
  bool star_star = false;  // the boundary approaches both rays of C
  bool approximate = false;
};

PropertyReport check_properties(const ConeBody& body);

// Distance from a point to the boundary of the body.
double boundary_distance(const ConeBody& body, const Vec2& point);

// Symmetric Hausdorff distance between the boundaries, restricted to boundary
// points within `radius` of the origin.
double hausdorff_truncated(const ConeBody& a, const ConeBody& b, double radius,
                           int resolution = 2000);

// Boundary samples within `radius`, ordered by increasing polar angle.
std::vector<Vec2> boundary_samples(const ConeBody& body, double radius, int n);

}  // namespace geotrig

#endif  // GEOTRIG_CONVEX_BODIES_HPP_
