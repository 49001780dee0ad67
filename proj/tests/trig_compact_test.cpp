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

#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "geotrig/error.hpp"
#include "geotrig/oracles.hpp"
#include "geotrig/trig_compact.hpp"

namespace geotrig {
namespace {

using testing::Gen;

ConvexBody square() { return ConvexBody::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }

std::vector<ConvexBody> test_bodies() {
  return {ConvexBody::unit_disc(), ConvexBody::ellipse(2, 1), square(),
          ConvexBody::lp_ball(3), ConvexBody::lp_ball(1.5),
          ConvexBody::polygon({{2, 0}, {1, 1.5}, {-1, 1}, {-1.5, -0.5}, {0.5, -1.2}})};
}

// Doubled sector area from the positive x-axis to the ray at angle phi,
// through a gauge-sampled boundary polyline.
double sector_oracle(const ConvexBody& body, double phi, int n = 100000) {
  std::vector<Vec2> poly;
  for (int k = 1; k < n; ++k) poly.push_back(body.boundary_point(phi * k / n));
  return sector_area_oracle(poly, body.boundary_point(0), body.boundary_point(phi));
}

}  // namespace

TEST_CASE("classical recovery on the disc") {
  const CompactTrig ev(ConvexBody::unit_disc());
  CHECK(ev.period() == doctest::Approx(kTwoPi));
  double err = 0;
  for (int k = 0; k <= 10000; ++k) {
    const double t = kTwoPi * k / 10000;
    const Vec2 p = ev.eval(t);
    err = std::max({err, std::abs(p.x() - std::cos(t)), std::abs(p.y() - std::sin(t))});
  }
  CHECK(err <= 1e-9);
  const Vec2 q = eval_trig(ev, kPi / 2);
  CHECK(std::abs(q.x()) < 1e-15);
  CHECK(q.y() == doctest::Approx(1));
}

TEST_CASE("theta = 0 lands on the positive x-axis") {
  for (const ConvexBody& b : test_bodies()) {
    const CompactTrig ev(b);
    const Vec2 p = ev.eval(0);
    CHECK(std::abs(p.y()) < 1e-14);
    CHECK(p.x() == doctest::Approx(b.radial(0)).epsilon(1e-13));
  }
}

TEST_CASE("square corner at theta = 1") {
  const CompactTrig ev(square());
  const Vec2 p = ev.eval(1);
  CHECK((p - Vec2(1, 1)).norm() < 1e-15);
  CHECK(ev.period() == doctest::Approx(8));
}

TEST_CASE("eval matches the shoelace sector oracle") {
  Gen g(21);
  for (const ConvexBody& b : test_bodies()) {
    const CompactTrig ev(b);
    for (int k = 0; k < 10; ++k) {
      const double phi = g.uniform(0.01, kTwoPi - 0.01);
      const double oracle = sector_oracle(b, phi);
      CHECK(ev.theta_of_angle(phi) == doctest::Approx(oracle).epsilon(1e-8));
      const Vec2 p = ev.eval(oracle);
      CHECK(angle_0_2pi(p) == doctest::Approx(phi).epsilon(1e-7));
    }
    CHECK(ev.area() == doctest::Approx(0.5 * sector_oracle(b, kTwoPi)).epsilon(1e-8));
  }
}

TEST_CASE("periodicity and radius consistency") {
  Gen g(22);
  for (const ConvexBody& b : test_bodies()) {
    const CompactTrig ev(b);
    for (int k = 0; k < 200; ++k) {
      const double t = g.uniform(-30, 30);
      const Vec2 p = ev.eval(t);
      CHECK((ev.eval(t + ev.period()) - p).norm() <= 1e-10);
      CHECK(b.gauge(p) == doctest::Approx(1).epsilon(1e-12));
      // theta -> angle -> theta round trip on the lifted chart.
      const double reduced = t - ev.period() * std::floor(t / ev.period());
      double back = ev.decompose(p).theta;
      if (back - reduced > 0.5 * ev.period()) back -= ev.period();
      if (reduced - back > 0.5 * ev.period()) back += ev.period();
      CHECK(back == doctest::Approx(reduced).epsilon(1e-9));
    }
  }
}

TEST_CASE("pythagorean identity and strict inequality off the correspondence") {
  Gen g(23);
  for (const ConvexBody& b : test_bodies()) {
    const CompactTrig ev(b);
    for (int k = 0; k < 100; ++k) {
      const double t = g.uniform(0, ev.period());
      const Vec2 c = ev.eval(t);
      const Interval eta = polar_correspondence(ev, t);
      for (double s : {0.0, 0.5, 1.0}) {
        const double e = eta.lo + s * eta.width();
        CHECK(c.dot(ev.eval_polar(e)) == doctest::Approx(1).epsilon(1e-8));
      }
      for (int j = 0; j < 50; ++j) {
        const double e = g.uniform(0, ev.polar_period());
        const double v = c.dot(ev.eval_polar(e));
        const double lifted = e + ev.polar_period() * std::round((eta.mid() - e) / ev.polar_period());
        if (!eta.contains(lifted, 1e-6)) CHECK(v < 1);
        CHECK(v <= 1 + 1e-12);
      }
    }
  }
}

TEST_CASE("square correspondence at edge midpoints and corners") {
  const CompactTrig ev(square());
  // theta = 0 is the midpoint of the edge x = 1; dual vertex (1, 0).
  const Interval mid = ev.correspondence(0);
  CHECK(mid.is_singleton());
  CHECK((ev.eval_polar(mid.lo) - Vec2(1, 0)).norm() < 1e-14);
  const Interval corner = ev.correspondence(1);
  CHECK_FALSE(corner.is_singleton());
  CHECK((ev.eval_polar(corner.lo) - Vec2(1, 0)).norm() < 1e-14);
  CHECK((ev.eval_polar(corner.hi) - Vec2(0, 1)).norm() < 1e-14);
  // Support-line brute force: every dual point on the edge [(1,0),(0,1)]
  // touches the square at (1, 1).
  const ConvexBody sqb = square();
  for (int k = 0; k <= 10; ++k) {
    const double e = corner.lo + corner.width() * k / 10;
    const Vec2 w = ev.eval_polar(e);
    double best = -1;
    for (const Vec2& v : sqb.vertices()) best = std::max(best, w.dot(v));
    CHECK(w.dot(Vec2(1, 1)) == doctest::Approx(best));
  }
  const Interval back = ev.inverse_correspondence(corner.mid());
  CHECK(back.is_singleton());
  CHECK(back.lo == doctest::Approx(1));
}

TEST_CASE("polar decomposition") {
  const CompactTrig disc(ConvexBody::unit_disc());
  const PolarCoords a = polar_decompose(disc, Vec2(3, 4));
  CHECK(a.A == doctest::Approx(5));
  CHECK(a.theta == doctest::Approx(std::atan2(4, 3)));
  const CompactTrig sq(square());
  const PolarCoords b = sq.decompose(Vec2(2, 2));
  CHECK(b.A == doctest::Approx(2));
  CHECK(b.theta == doctest::Approx(1));
  CHECK_THROWS_AS(sq.decompose(Vec2(0, 0)), Error);
  Gen g(24);
  for (const ConvexBody& body : test_bodies()) {
    const CompactTrig ev(body);
    for (int k = 0; k < 200; ++k) {
      const Vec2 x = g.point_in_disc(10);
      const PolarCoords pc = ev.decompose(x);
      CHECK((pc.A * ev.eval(pc.theta) - x).norm() <= 1e-10 * std::max(1.0, x.norm()));
      const Vec2 bp = body.boundary_point(g.uniform(0, kTwoPi));
      CHECK(ev.decompose(bp).A == doctest::Approx(1).epsilon(1e-13));
    }
  }
}

TEST_CASE("theta_dot") {
  const CompactTrig disc(ConvexBody::unit_disc());
  AngleRates r = theta_dot(disc, Vec2(1, 0), Vec2(0, 1));
  CHECK(r.dtheta == doctest::Approx(1));
  CHECK(std::abs(r.dA) < 1e-15);
  r = disc.theta_dot(Vec2(1, 0), Vec2(1, 0));
  CHECK(std::abs(r.dtheta) < 1e-15);
  CHECK(r.dA == doctest::Approx(1));
  const CompactTrig sq(square());
  CHECK_THROWS_AS(sq.theta_dot(Vec2(1, 1), Vec2(0.3, 0.2)), Error);
  Gen g(25);
  for (const ConvexBody& body : test_bodies()) {
    const CompactTrig ev(body);
    for (int k = 0; k < 50; ++k) {
      const Vec2 x = 2 * body.boundary_point(g.uniform(0, kTwoPi));
      const Vec2 v(g.uniform(-1, 1), g.uniform(-1, 1));
      AngleRates ar;
      try {
        ar = ev.theta_dot(x, v);
      } catch (const Error&) {
        continue;  // corner
      }
      const auto th = finite_difference_oracle(
          [&](double s) { return ev.decompose(x + s * v).theta; }, 0, 1e-6);
      const auto a = finite_difference_oracle(
          [&](double s) { return ev.decompose(x + s * v).A; }, 0, 1e-6);
      CHECK(ar.dtheta == doctest::Approx(th.value).epsilon(1e-6));
      CHECK(ar.dA == doctest::Approx(a.value).epsilon(1e-6));
    }
  }
}

TEST_CASE("derivative identity at smooth points") {
  Gen g(26);
  for (const ConvexBody& body : test_bodies()) {
    const CompactTrig ev(body);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
      const double t = g.uniform(0, ev.period());
      const Interval eta = ev.correspondence(t);
      if (!eta.is_singleton()) continue;
      // Skip points within a step of a corner.
      if (!ev.correspondence(t - 1e-5).is_singleton() ||
          !ev.correspondence(t + 1e-5).is_singleton()) continue;
      if (std::abs(ev.correspondence(t - 1e-5).lo - ev.correspondence(t + 1e-5).lo) > 1e-3 &&
          body.shape() == ConvexBody::Shape::kPolygon) continue;
      const Vec2 w = ev.eval_polar(eta.lo);
      const auto dc = finite_difference_oracle([&](double s) { return ev.eval(s).x(); }, t, 1e-6);
      const auto ds = finite_difference_oracle([&](double s) { return ev.eval(s).y(); }, t, 1e-6);
      CHECK(dc.value == doctest::Approx(-w.y()).epsilon(1e-5));
      CHECK(ds.value == doctest::Approx(w.x()).epsilon(1e-5));
      ++checked;
    }
    CHECK(checked > 100);
  }
}

}  // namespace geotrig
