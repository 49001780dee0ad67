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

#include "geotrig/trig_compact.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "geotrig/error.hpp"

namespace geotrig {

namespace {

// psi + 2 pi m closest to ref.
double lift_near(double psi, double ref) {
  return psi + kTwoPi * std::round((ref - psi) / kTwoPi);
}

// 90 degree rotation applied j times.
Vec2 quarter_turns(Vec2 v, int j) {
  for (int i = 0; i < (j & 3); ++i) v = perp(v);
  return v;
}

}  // namespace

SectorChart::SectorChart(const ConvexBody& body) : body_(body) {
  switch (body_.shape()) {
    case ConvexBody::Shape::kPolygon: {
      const Vec2 start = body_.boundary_point(0);
      nodes_.push_back(start);
      node_angle_.push_back(0);
      for (const Vec2& v : body_.vertices()) {
        const double a = angle_0_2pi(v);
        if (a > 0) {
          nodes_.push_back(v);
          node_angle_.push_back(a);
        }
      }
      nodes_.push_back(start);
      node_angle_.push_back(kTwoPi);
      node_theta_.push_back(0);
      for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        node_theta_.push_back(node_theta_.back() + cross(nodes_[i], nodes_[i + 1]));
      }
      period_ = node_theta_.back();
      break;
    }
    case ConvexBody::Shape::kEllipse:
      period_ = kTwoPi * body_.semi_axis_a() * body_.semi_axis_b();
      break;
    case ConvexBody::Shape::kLp: {
      const double p = body_.exponent();
      quadrant_ = boost::math::beta(1 / p, 1 / p) / p;
      period_ = 4 * quadrant_;
      break;
    }
  }
}

double SectorChart::theta_of_angle(double phi) const {
  const double k = std::floor(phi / kTwoPi);
  double r = phi - kTwoPi * k;
  if (r >= kTwoPi) r = 0;
  double local = 0;
  switch (body_.shape()) {
    case ConvexBody::Shape::kPolygon: {
      auto it = std::upper_bound(node_angle_.begin(), node_angle_.end(), r);
      std::size_t i = static_cast<std::size_t>(it - node_angle_.begin());
      i = std::clamp<std::size_t>(i, 1, nodes_.size() - 1) - 1;
      const Vec2& q = nodes_[i];
      const Vec2 e = nodes_[i + 1] - q;
      const Vec2 u = unit(r);
      const Vec2 point = u * (cross(q, e) / cross(u, e));
      local = node_theta_[i] + cross(q, point);
      break;
    }
    case ConvexBody::Shape::kEllipse: {
      const double a = body_.semi_axis_a();
      const double b = body_.semi_axis_b();
      double psi = std::atan2(a * std::sin(r), b * std::cos(r));
      if (psi < 0) psi += kTwoPi;
      local = a * b * psi;
      break;
    }
    case ConvexBody::Shape::kLp: {
      const double p = body_.exponent();
      const int j = std::min(3, static_cast<int>(r / (kPi / 2)));
      const double s = r - j * (kPi / 2);
      // Within a quadrant the doubled area up to slope u = tan s is the
      // incomplete beta integral B(w; 1/p, 1/p) / p, w = u^p / (1 + u^p).
      const double a = 1 / p;
      double t;
      if (s <= kPi / 4) {
        const double up = std::pow(std::tan(s), p);
        t = boost::math::ibeta(a, a, up / (1 + up));
      } else {
        const double vp = std::pow(std::tan(kPi / 2 - s), p);
        t = 1 - boost::math::ibeta(a, a, vp / (1 + vp));
      }
      local = quadrant_ * (j + t);
      break;
    }
  }
  return local + period_ * k;
}

Vec2 SectorChart::point(double theta) const {
  const double k = std::floor(theta / period_);
  double r = theta - period_ * k;
  if (r >= period_) r = 0;
  switch (body_.shape()) {
    case ConvexBody::Shape::kPolygon: {
      auto it = std::upper_bound(node_theta_.begin(), node_theta_.end(), r);
      std::size_t i = static_cast<std::size_t>(it - node_theta_.begin());
      i = std::clamp<std::size_t>(i, 1, nodes_.size() - 1) - 1;
      const Vec2& q = nodes_[i];
      const Vec2& next = nodes_[i + 1];
      const double s = (r - node_theta_[i]) / cross(q, next);
      return q + s * (next - q);
    }
    case ConvexBody::Shape::kEllipse: {
      const double a = body_.semi_axis_a();
      const double b = body_.semi_axis_b();
      const double psi = r / (a * b);
      return Vec2(a * std::cos(psi), b * std::sin(psi));
    }
    case ConvexBody::Shape::kLp: {
      const double p = body_.exponent();
      const int j = std::min(3, static_cast<int>(r / quadrant_));
      const double t = std::clamp(r / quadrant_ - j, 0.0, 1.0);
      const double a = 1 / p;
      // By the symmetry I_w(a, a) = 1 - I_{1-w}(a, a) both coordinates come
      // from a forward inverse, which keeps precision near the axes.
      const double y = std::pow(boost::math::ibeta_inv(a, a, t), a);
      const double x = std::pow(boost::math::ibeta_inv(a, a, 1 - t), a);
      return quarter_turns(Vec2(x, y), j);
    }
  }
  return Vec2(0, 0);
}

double SectorChart::angle_of_theta(double theta) const {
  const Vec2 p = point(theta);
  const double k = std::floor(theta / period_);
  double phi = angle_0_2pi(p) + kTwoPi * k;
  const double back = theta_of_angle(phi);
  if (back - theta > 0.5 * period_) phi -= kTwoPi;
  if (theta - back > 0.5 * period_) phi += kTwoPi;
  return phi;
}

CompactTrig::CompactTrig(ConvexBody body)
    : body_(std::move(body)),
      polar_body_(polar(body_)),
      chart_(body_),
      polar_chart_(polar_body_) {}

Interval CompactTrig::correspondence(double theta) const {
  const Vec2 p = chart_.point(theta);
  const double phi = chart_.angle_of_theta(theta);
  const auto [lo, hi] = body_.normal_covectors(p);
  const double a = lift_near(std::atan2(lo.y(), lo.x()), phi);
  if ((lo - hi).norm() == 0) {
    const double eta = polar_chart_.theta_of_angle(a);
    return {eta, eta};
  }
  const double b = lift_near(std::atan2(hi.y(), hi.x()), phi);
  return {polar_chart_.theta_of_angle(a), polar_chart_.theta_of_angle(b)};
}

Interval CompactTrig::inverse_correspondence(double eta) const {
  const Vec2 w = polar_chart_.point(eta);
  const double psi = polar_chart_.angle_of_theta(eta);
  const auto [lo, hi] = polar_body_.normal_covectors(w);
  const double a = lift_near(std::atan2(lo.y(), lo.x()), psi);
  if ((lo - hi).norm() == 0) {
    const double t = chart_.theta_of_angle(a);
    return {t, t};
  }
  const double b = lift_near(std::atan2(hi.y(), hi.x()), psi);
  return {chart_.theta_of_angle(a), chart_.theta_of_angle(b)};
}

PolarCoords CompactTrig::decompose(const Vec2& point) const {
  if (point.norm() == 0) raise(Errc::kOriginPoint, "polar decomposition of the origin");
  return {body_.gauge(point), chart_.theta_of_angle(angle_0_2pi(point))};
}

AngleRates CompactTrig::theta_dot(const Vec2& point, const Vec2& velocity) const {
  const PolarCoords pc = decompose(point);
  const Interval eta = correspondence(pc.theta);
  if (!eta.is_singleton()) {
    raise(Errc::kNonUniqueSupport, "theta_dot at a corner of the body");
  }
  const Vec2 c = eval(pc.theta);
  const Vec2 w = eval_polar(eta.lo);
  return {(velocity.y() * c.x() - velocity.x() * c.y()) / pc.A, velocity.dot(w)};
}

}  // namespace geotrig
