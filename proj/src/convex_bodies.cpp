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

#include "geotrig/convex_bodies.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "geotrig/error.hpp"

namespace geotrig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_vec(const Vec2& v) { return std::isfinite(v.x()) && std::isfinite(v.y()); }

// Sorted by angle, duplicates and collinear middle points removed, checked
// for strict convexity and for containing the origin.
std::vector<Vec2> canonical_polygon(std::vector<Vec2> v) {
  for (const Vec2& p : v) {
    if (!finite_vec(p)) raise(Errc::kInvalidBody, "non-finite polygon vertex");
    if (p.norm() == 0) raise(Errc::kInvalidBody, "polygon vertex at the origin");
  }
  std::sort(v.begin(), v.end(), [](const Vec2& a, const Vec2& b) {
    return angle_0_2pi(a) < angle_0_2pi(b);
  });
  std::vector<Vec2> out;
  for (const Vec2& p : v) {
    if (out.empty() || (p - out.back()).norm() > 1e-14 * p.norm()) out.push_back(p);
  }
  if (out.size() > 1 && (out.front() - out.back()).norm() <= 1e-14 * out.front().norm()) {
    out.pop_back();
  }
  bool removed = true;
  while (removed && out.size() >= 3) {
    removed = false;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& prev = out[(i + n - 1) % n];
      const Vec2& next = out[(i + 1) % n];
      const Vec2 e1 = out[i] - prev;
      const Vec2 e2 = next - out[i];
      if (std::abs(cross(e1, e2)) <= 1e-14 * e1.norm() * e2.norm()) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        removed = true;
        break;
      }
    }
  }
  if (out.size() < 3) raise(Errc::kInvalidBody, "polygon needs 3 non-collinear vertices");
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = out[i];
    const Vec2& b = out[(i + 1) % n];
    const Vec2& c = out[(i + 2) % n];
    if (cross(a, b) <= 0) raise(Errc::kInvalidBody, "origin is not interior to the polygon");
    if (cross(b - a, c - b) <= 0) raise(Errc::kInvalidBody, "polygon is not convex");
  }
  return out;
}

std::vector<Vec2> points_from_samples(const std::vector<double>& phi,
                                      const std::vector<double>& r) {
  if (phi.size() != r.size()) raise(Errc::kInvalidBody, "phi and r differ in length");
  std::vector<Vec2> pts;
  pts.reserve(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!(r[i] > 0) || !std::isfinite(r[i]) || !std::isfinite(phi[i])) {
      raise(Errc::kInvalidBody, "radial samples need finite phi and r > 0");
    }
    pts.push_back(r[i] * unit(phi[i]));
  }
  return pts;
}

double dual_exponent(double p) {
  if (std::isinf(p)) return 1;
  if (p == 1) return kInf;
  return p / (p - 1);
}

double signed_pow(double x, double e) {
  return std::copysign(std::pow(std::abs(x), e), x);
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 e = b - a;
  const double len2 = e.squaredNorm();
  double s = len2 > 0 ? (p - a).dot(e) / len2 : 0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + s * e - p).norm();
}

double ray_distance(const Vec2& p, const Vec2& a, const Vec2& d) {
  const double s = std::max(0.0, (p - a).dot(d) / d.squaredNorm());
  return (a + s * d - p).norm();
}

}  // namespace

ConvexBody::ConvexBody(CompactDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  std::visit(
      [this](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PolygonDescriptor>) {
          init_polygon(d.vertices);
        } else if constexpr (std::is_same_v<T, EllipseDescriptor>) {
          if (!(d.a > 0) || !(d.b > 0) || !std::isfinite(d.a) || !std::isfinite(d.b)) {
            raise(Errc::kInvalidBody, "ellipse semi-axes must be positive");
          }
          shape_ = Shape::kEllipse;
          a_ = d.a;
          b_ = d.b;
        } else if constexpr (std::is_same_v<T, LpBallDescriptor>) {
          if (!(d.p >= 1)) raise(Errc::kInvalidBody, "lp ball needs p >= 1");
          p_ = d.p;
          if (d.p == 1) {
            init_polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
          } else if (std::isinf(d.p)) {
            init_polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
          } else if (d.p == 2) {
            shape_ = Shape::kEllipse;
          } else {
            shape_ = Shape::kLp;
          }
        } else {
          init_polygon(points_from_samples(d.phi, d.r));
        }
      },
      descriptor_);
}

void ConvexBody::init_polygon(std::vector<Vec2> vertices) {
  shape_ = Shape::kPolygon;
  vertices_ = canonical_polygon(std::move(vertices));
  const std::size_t n = vertices_.size();
  edge_covectors_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    edge_covectors_[i] = Vec2(b.y() - a.y(), a.x() - b.x()) / cross(a, b);
  }
}

ConvexBody ConvexBody::polygon(std::vector<Vec2> vertices) {
  return ConvexBody(PolygonDescriptor{std::move(vertices)});
}
ConvexBody ConvexBody::ellipse(double a, double b) { return ConvexBody(EllipseDescriptor{a, b}); }
ConvexBody ConvexBody::lp_ball(double p) { return ConvexBody(LpBallDescriptor{p}); }
ConvexBody ConvexBody::radial_samples(std::vector<double> phi, std::vector<double> r) {
  return ConvexBody(RadialSamplesDescriptor{std::move(phi), std::move(r)});
}

double ConvexBody::gauge(const Vec2& x) const {
  switch (shape_) {
    case Shape::kPolygon: {
      double m = 0;
      for (const Vec2& w : edge_covectors_) m = std::max(m, w.dot(x));
      return m;
    }
    case Shape::kEllipse:
      return std::hypot(x.x() / a_, x.y() / b_);
    case Shape::kLp: {
      const double m = std::max(std::abs(x.x()), std::abs(x.y()));
      if (m == 0) return 0;
      return m * std::pow(std::pow(std::abs(x.x()) / m, p_) + std::pow(std::abs(x.y()) / m, p_),
                          1 / p_);
    }
  }
  return 0;
}

double ConvexBody::radial(double phi) const { return 1 / gauge(unit(phi)); }

Vec2 ConvexBody::boundary_point(double phi) const {
  const Vec2 u = unit(phi);
  return u / gauge(u);
}

double ConvexBody::support(const Vec2& dir) const {
  switch (shape_) {
    case Shape::kPolygon: {
      double m = -kInf;
      for (const Vec2& v : vertices_) m = std::max(m, v.dot(dir));
      return m;
    }
    case Shape::kEllipse:
      return std::hypot(a_ * dir.x(), b_ * dir.y());
    case Shape::kLp: {
      const double q = dual_exponent(p_);
      const double m = std::max(std::abs(dir.x()), std::abs(dir.y()));
      if (m == 0) return 0;
      return m * std::pow(std::pow(std::abs(dir.x()) / m, q) + std::pow(std::abs(dir.y()) / m, q),
                          1 / q);
    }
  }
  return 0;
}

Face ConvexBody::face(const Vec2& dir) const {
  if (dir.norm() == 0) raise(Errc::kZeroCovector, "face of a zero covector");
  switch (shape_) {
    case Shape::kPolygon: {
      const std::size_t n = vertices_.size();
      double best = -kInf;
      for (const Vec2& v : vertices_) best = std::max(best, v.dot(dir));
      double scale = 0;
      for (const Vec2& v : vertices_) scale = std::max(scale, v.norm());
      const double tol = 1e-12 * scale * dir.norm();
      for (std::size_t i = 0; i < n; ++i) {
        if (vertices_[i].dot(dir) < best - tol) continue;
        const std::size_t j = (i + 1) % n;
        const std::size_t k = (i + n - 1) % n;
        if (vertices_[j].dot(dir) >= best - tol) return {vertices_[i], vertices_[j]};
        if (vertices_[k].dot(dir) >= best - tol) return {vertices_[k], vertices_[i]};
        return {vertices_[i], vertices_[i]};
      }
      raise(Errc::kInvalidInput, "no supporting vertex found");
    }
    case Shape::kEllipse: {
      const Vec2 p = Vec2(a_ * a_ * dir.x(), b_ * b_ * dir.y()) / support(dir);
      return {p, p};
    }
    case Shape::kLp: {
      const double q = dual_exponent(p_);
      const double h = support(dir);
      const Vec2 d = dir / h;
      const Vec2 p(signed_pow(d.x(), q - 1), signed_pow(d.y(), q - 1));
      return {p, p};
    }
  }
  return {};
}

double ConvexBody::area() const {
  switch (shape_) {
    case Shape::kPolygon: {
      double s = 0;
      const std::size_t n = vertices_.size();
      for (std::size_t i = 0; i < n; ++i) s += cross(vertices_[i], vertices_[(i + 1) % n]);
      return 0.5 * s;
    }
    case Shape::kEllipse:
      return kPi * a_ * b_;
    case Shape::kLp: {
      const double g = std::tgamma(1 + 1 / p_);
      return 4 * g * g / std::tgamma(1 + 2 / p_);
    }
  }
  return 0;
}

std::pair<Vec2, Vec2> ConvexBody::normal_covectors(const Vec2& point) const {
  switch (shape_) {
    case Shape::kPolygon: {
      const std::size_t n = vertices_.size();
      const double scale = point.norm();
      for (std::size_t i = 0; i < n; ++i) {
        if ((vertices_[i] - point).norm() <= 1e-12 * scale) {
          return {edge_covectors_[(i + n - 1) % n], edge_covectors_[i]};
        }
      }
      // The edge whose covector is active at the point.
      std::size_t best = 0;
      double val = -kInf;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = edge_covectors_[i].dot(point);
        if (v > val) {
          val = v;
          best = i;
        }
      }
      return {edge_covectors_[best], edge_covectors_[best]};
    }
    case Shape::kEllipse: {
      Vec2 n(point.x() / (a_ * a_), point.y() / (b_ * b_));
      n /= n.dot(point);
      return {n, n};
    }
    case Shape::kLp: {
      Vec2 n(signed_pow(point.x(), p_ - 1), signed_pow(point.y(), p_ - 1));
      n /= n.dot(point);
      return {n, n};
    }
  }
  return {};
}

double minkowski_functional(const ConvexBody& body, const Vec2& point) {
  return body.gauge(point);
}

ConvexBody polar(const ConvexBody& body) {
  if (const auto* lp = std::get_if<LpBallDescriptor>(&body.descriptor())) {
    return ConvexBody::lp_ball(dual_exponent(lp->p));
  }
  switch (body.shape()) {
    case ConvexBody::Shape::kPolygon:
      return ConvexBody::polygon(body.edge_covectors());
    case ConvexBody::Shape::kEllipse:
      return ConvexBody::ellipse(1 / body.semi_axis_a(), 1 / body.semi_axis_b());
    case ConvexBody::Shape::kLp:
      return ConvexBody::lp_ball(dual_exponent(body.exponent()));
  }
  return body;
}

double hausdorff(const ConvexBody& a, const ConvexBody& b, int resolution) {
  double d = 0;
  for (int k = 0; k < resolution; ++k) {
    const Vec2 u = unit(kTwoPi * k / resolution);
    d = std::max(d, std::abs(a.support(u) - b.support(u)));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Cone bodies.

ConeBody::ConeBody(ConeDescriptor descriptor, double r_max)
    : descriptor_(std::move(descriptor)), r_max_(r_max) {
  if (!(r_max > 0)) raise(Errc::kInvalidBody, "r_max must be positive");
  std::visit(
      [this](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, AlphaHyperbolaDescriptor>) {
          if (!(d.alpha > 1) || !std::isfinite(d.alpha) || !std::isfinite(d.rotation)) {
            raise(Errc::kInvalidBody, "alpha hyperbola needs finite alpha > 1");
          }
          shape_ = Shape::kAlphaHyperbola;
          alpha_ = d.alpha;
          rotation_ = d.rotation;
          phi0_ = rotation_ - kPi / 4;
          phi1_ = rotation_ + kPi / 4;
          closest_ = from_frame(Vec2(1, 0));
        } else if constexpr (std::is_same_v<T, RaySegmentDescriptor>) {
          if (!finite_vec(d.p0) || !finite_vec(d.p1) || d.p0.norm() == 0 || d.p1.norm() == 0) {
            raise(Errc::kInvalidBody, "ray segment endpoints must be finite and nonzero");
          }
          const double c = cross(d.p0, d.p1);
          if (c == 0) raise(Errc::kInvalidBody, "ray segment endpoints are collinear with 0");
          const Vec2 lo = c > 0 ? d.p0 : d.p1;
          const Vec2 hi = c > 0 ? d.p1 : d.p0;
          init_polyline({lo, hi}, lo, hi);
        } else if constexpr (std::is_same_v<T, ConeRadialSamplesDescriptor>) {
          std::vector<Vec2> pts = points_from_samples(d.phi, d.r);
          if (pts.size() < 2) raise(Errc::kInvalidBody, "cone samples need 2 points");
          std::vector<std::size_t> idx(pts.size());
          for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
          std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return d.phi[a] < d.phi[b];
          });
          std::vector<Vec2> v;
          for (std::size_t i : idx) v.push_back(pts[i]);
          const std::size_t n = v.size();
          sampled_ = true;
          init_polyline(v, v[0] - v[1], v[n - 1] - v[n - 2]);
        } else {
          init_polyline(d.vertices, d.ray0, d.ray1);
        }
      },
      descriptor_);
}

void ConeBody::init_polyline(std::vector<Vec2> v, Vec2 d0, Vec2 d1) {
  shape_ = Shape::kPolyline;
  if (v.empty()) raise(Errc::kInvalidBody, "polyline needs a vertex");
  if (!finite_vec(d0) || !finite_vec(d1) || d0.norm() == 0 || d1.norm() == 0) {
    raise(Errc::kInvalidBody, "polyline rays must be finite and nonzero");
  }
  d0.normalize();
  d1.normalize();
  const double opening = std::atan2(cross(d0, d1), d0.dot(d1));
  if (!(opening > 0)) raise(Errc::kInvalidBody, "cone opening must lie in (0, pi)");
  auto from_d0 = [&](const Vec2& p) { return std::atan2(cross(d0, p), d0.dot(p)); };
  for (const Vec2& p : v) {
    if (!finite_vec(p) || p.norm() == 0) raise(Errc::kInvalidBody, "bad polyline vertex");
    const double a = from_d0(p);
    if (a < -1e-12 || a > opening + 1e-12) {
      raise(Errc::kInvalidBody, "vertex outside the recession cone (ray property fails)");
    }
  }
  std::sort(v.begin(), v.end(),
            [&](const Vec2& a, const Vec2& b) { return from_d0(a) < from_d0(b); });
  std::vector<Vec2> u;
  for (const Vec2& p : v) {
    if (u.empty() || (p - u.back()).norm() > 1e-14 * p.norm()) u.push_back(p);
  }
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (cross(u[i], u[i + 1]) <= 0) raise(Errc::kInvalidBody, "polyline edge through the origin");
  }
  // Turning direction along the boundary: incoming along -d0, the edges, then
  // outgoing along d1. A convex upward-closed set turns clockwise.
  std::vector<Vec2> dirs{-d0};
  for (std::size_t i = 0; i + 1 < u.size(); ++i) dirs.push_back((u[i + 1] - u[i]).normalized());
  dirs.push_back(d1);
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
    if (cross(dirs[i], dirs[i + 1]) > 1e-12) raise(Errc::kInvalidBody, "polyline body is not convex");
  }
  vertices_ = u;
  phi0_ = std::atan2(d0.y(), d0.x());
  phi1_ = phi0_ + opening;

  const Vec2& first = vertices_.front();
  const Vec2& last = vertices_.back();
  facets_.clear();
  if (cross(d0, first) > 1e-12 * first.norm()) facets_.push_back(perp(d0) / cross(d0, first));
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[i + 1];
    facets_.push_back(Vec2(b.y() - a.y(), a.x() - b.x()) / cross(a, b));
  }
  if (cross(d1, last) < -1e-12 * last.norm()) facets_.push_back(perp(d1) / cross(d1, last));
  if (facets_.empty()) raise(Errc::kInvalidBody, "polyline body has no facet");

  const Vec2 origin(0, 0);
  double best = ray_distance(origin, first, d0);
  closest_ = first + std::max(0.0, -first.dot(d0)) * d0;
  auto consider = [&](const Vec2& p) {
    if (p.norm() < best) {
      best = p.norm();
      closest_ = p;
    }
  };
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const Vec2 e = vertices_[i + 1] - vertices_[i];
    const double s = std::clamp(-vertices_[i].dot(e) / e.squaredNorm(), 0.0, 1.0);
    consider(vertices_[i] + s * e);
  }
  consider(last + std::max(0.0, -last.dot(d1)) * d1);
}

ConeBody ConeBody::alpha_hyperbola(double alpha, double rotation) {
  return ConeBody(AlphaHyperbolaDescriptor{alpha, rotation});
}
ConeBody ConeBody::ray_segment(const Vec2& p0, const Vec2& p1) {
  return ConeBody(RaySegmentDescriptor{p0, p1});
}
ConeBody ConeBody::radial_samples(std::vector<double> phi, std::vector<double> r) {
  return ConeBody(ConeRadialSamplesDescriptor{std::move(phi), std::move(r)});
}
ConeBody ConeBody::polyline(std::vector<Vec2> vertices, const Vec2& ray0, const Vec2& ray1) {
  return ConeBody(PolylineDescriptor{std::move(vertices), ray0, ray1});
}

Vec2 ConeBody::dual_ray_direction(int k) const {
  if (k == 0) return Vec2(std::sin(phi0_), -std::cos(phi0_));
  return Vec2(-std::sin(phi1_), std::cos(phi1_));
}

bool ConeBody::in_cone(const Vec2& x, double tol) const {
  const double n = x.norm();
  return cross(ray_direction(0), x) >= -tol * n && cross(x, ray_direction(1)) >= -tol * n;
}

double ConeBody::antinorm(const Vec2& x) const {
  if (x.norm() == 0) return 0;
  if (!in_cone(x, 1e-14)) return -kInf;
  if (shape_ == Shape::kAlphaHyperbola) {
    const Vec2 f = to_frame(x);
    const double big = f.x();
    const double small = std::abs(f.y());
    // Directions within rounding of an asymptote are on it; the closed form
    // would turn that rounding into an O(sqrt(eps)) value.
    if (small >= big * (1 - 16 * std::numeric_limits<double>::epsilon())) return 0;
    if (small == 0) return big;
    return big * std::pow(-std::expm1(alpha_ * std::log(small / big)), 1 / alpha_);
  }
  double m = kInf;
  for (const Vec2& w : facets_) m = std::min(m, w.dot(x));
  return std::max(0.0, m);
}

double ConeBody::radial(double phi) const {
  const double v = antinorm(unit(phi));
  return v > 0 ? 1 / v : kInf;
}

double ConeBody::alpha_abscissa(double y) const {
  const double a = std::abs(y);
  if (a <= 1) return std::pow(1 + std::pow(a, alpha_), 1 / alpha_);
  return a * std::pow(1 + std::pow(a, -alpha_), 1 / alpha_);
}

Vec2 ConeBody::alpha_point(double y) const { return from_frame(Vec2(alpha_abscissa(y), y)); }

Vec2 ConeBody::alpha_tangent(double y) const {
  const double x = alpha_abscissa(y);
  const double slope = std::copysign(std::pow(std::abs(y) / x, alpha_ - 1), y);
  return from_frame(Vec2(slope, 1));
}

double ConeBody::end_offset(int k) const {
  if (shape_ == Shape::kAlphaHyperbola) return 0;
  const Vec2 v = k == 0 ? vertices_.front() : vertices_.back();
  return std::abs(cross(ray_direction(k), v));
}

double ConeBody::through_origin_tol() const {
  return (sampled_ ? 1e-3 : 1e-12) * min_radius();
}

double antinorm_eval(const ConeBody& body, const Vec2& point) { return body.antinorm(point); }

Vec2 closest_point(const ConeBody& body) { return body.closest_point(); }

ConeBody antipolar(const ConeBody& body) {
  if (body.shape() == ConeBody::Shape::kAlphaHyperbola) {
    const double a = body.alpha();
    return ConeBody(AlphaHyperbolaDescriptor{a / (a - 1), -body.rotation()}, body.r_max());
  }
  const auto& v = body.vertices();
  const auto& w = body.facet_covectors();
  const Vec2 d0 = body.ray0();
  const Vec2 d1 = body.ray1();
  const bool start_facet = cross(d0, v.front()) > 1e-12 * v.front().norm();
  const bool end_facet = cross(d1, v.back()) < -1e-12 * v.back().norm();
  const Vec2 t0 = start_facet ? perp(d0) : perp(v.front());
  const Vec2 t1 = end_facet ? Vec2(-perp(d1)) : Vec2(-perp(v.back()));
  std::vector<Vec2> dual;
  dual.reserve(w.size());
  for (const Vec2& c : w) {
    for (const Vec2& p : v) {
      if (c.dot(p) < 1 - 1e-9) raise(Errc::kEmptyAntipolar, "separation failed at a vertex");
    }
    dual.push_back(flip(c));
  }
  ConeBody out(PolylineDescriptor{dual, flip(t0), flip(t1)}, body.r_max());
  // The dual of a sampled body keeps the sampled tolerance for property checks.
  out.sampled_ = body.sampled();
  return out;
}

PropertyReport check_properties(const ConeBody& body) {
  PropertyReport r;
  r.i = true;
  r.approximate = body.sampled();
  if (body.shape() == ConeBody::Shape::kAlphaHyperbola) {
    r.star = true;
    r.star_star = true;
    return r;
  }
  const double tol = body.through_origin_tol();
  const double o0 = body.end_offset(0);
  const double o1 = body.end_offset(1);
  r.star = o0 > tol && o1 > tol;
  r.star_star = o0 <= tol && o1 <= tol;
  return r;
}

double boundary_distance(const ConeBody& body, const Vec2& point) {
  if (body.shape() == ConeBody::Shape::kPolyline) {
    const auto& v = body.vertices();
    double d = std::min(ray_distance(point, v.front(), body.ray0()),
                        ray_distance(point, v.back(), body.ray1()));
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      d = std::min(d, segment_distance(point, v[i], v[i + 1]));
    }
    return d;
  }
  const Vec2 f = body.to_frame(point);
  auto dist2 = [&](double y) {
    return (Vec2(body.alpha_abscissa(y), y) - f).squaredNorm();
  };
  const double half = f.norm() + 2;
  const int n = 400;
  double best_y = f.y();
  double best = dist2(best_y);
  const double step = 2 * half / n;
  for (int k = 0; k <= n; ++k) {
    const double y = f.y() - half + k * step;
    const double d = dist2(y);
    if (d < best) {
      best = d;
      best_y = y;
    }
  }
  const auto r = boost::math::tools::brent_find_minima(dist2, best_y - step, best_y + step, 52);
  return std::sqrt(std::min(best, r.second));
}

std::vector<Vec2> boundary_samples(const ConeBody& body, double radius, int n) {
  std::vector<Vec2> out;
  if (n < 2) n = 2;
  if (body.shape() == ConeBody::Shape::kAlphaHyperbola) {
    // Largest |y| whose boundary point stays within the radius.
    double lo = 0;
    double hi = radius;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (body.alpha_point(mid).norm() <= radius) lo = mid; else hi = mid;
    }
    const double s = std::asinh(lo);
    for (int k = 0; k < n; ++k) {
      out.push_back(body.alpha_point(std::sinh(-s + 2 * s * k / (n - 1))));
    }
    return out;
  }
  const auto& v = body.vertices();
  auto ray_extent = [&](const Vec2& a, const Vec2& d) {
    // Largest s >= 0 with |a + s d| <= radius (0 when a is already outside).
    const double b = a.dot(d);
    const double c = a.squaredNorm() - radius * radius;
    if (c > 0) return 0.0;
    return -b + std::sqrt(b * b - c);
  };
  std::vector<Vec2> path;
  const double s0 = ray_extent(v.front(), body.ray0());
  const double s1 = ray_extent(v.back(), body.ray1());
  path.push_back(v.front() + s0 * body.ray0());
  for (const Vec2& p : v) path.push_back(p);
  path.push_back(v.back() + s1 * body.ray1());
  double total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) total += (path[i + 1] - path[i]).norm();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double len = (path[i + 1] - path[i]).norm();
    const int m = std::max(1, static_cast<int>(std::ceil(n * len / std::max(total, 1e-300))));
    for (int k = 0; k < m; ++k) {
      const Vec2 p = path[i] + (path[i + 1] - path[i]) * (static_cast<double>(k) / m);
      if (p.norm() <= radius * (1 + 1e-12)) out.push_back(p);
    }
  }
  if (path.back().norm() <= radius * (1 + 1e-12)) out.push_back(path.back());
  return out;
}

double hausdorff_truncated(const ConeBody& a, const ConeBody& b, double radius, int resolution) {
  double d = 0;
  for (const Vec2& p : boundary_samples(a, radius, resolution)) {
    d = std::max(d, boundary_distance(b, p));
  }
  for (const Vec2& p : boundary_samples(b, radius, resolution)) {
    d = std::max(d, boundary_distance(a, p));
  }
  return d;
}

}  // namespace geotrig
