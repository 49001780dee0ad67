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
#include "geotrig/geodesics_heisenberg.hpp"
#include "geotrig/oracles.hpp"

namespace geotrig {
namespace {

using testing::Gen;

ConvexBody square() { return ConvexBody::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }

SphericalControlSet disc_set() {
  return SphericalControlSet(ConvexBody::unit_disc(), Profile::sqrt_cap());
}
SphericalControlSet square_set() {
  return SphericalControlSet(square(), Profile::constant(1, 1, 1));
}
SphericalControlSet lp_set() { return SphericalControlSet(ConvexBody::lp_ball(3), Profile::lp_cap(3)); }

std::vector<double> grid(double T, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(T * i / n);
  return g;
}

// Dense-sample maximum of A f(v) + h3 v, refined by golden section around
// the best sample.
double brute_H(const SphericalControlSet& set, double A, double h3) {
  auto g = [&](double v) { return A * set.f()(v) + h3 * v; };
  const double lo = -set.m();
  const double step = (set.m() + set.M()) / 200000;
  int best_i = 0;
  for (int i = 0; i <= 200000; ++i) {
    if (g(lo + step * i) > g(lo + step * best_i)) best_i = i;
  }
  double a = std::max(lo, lo + step * (best_i - 1));
  double b = std::min(set.M(), lo + step * (best_i + 1));
  const double r = (std::sqrt(5.0) - 1) / 2;
  for (int k = 0; k < 200; ++k) {
    const double x1 = b - r * (b - a);
    const double x2 = a + r * (b - a);
    (g(x1) < g(x2) ? a : b) = (g(x1) < g(x2) ? x1 : x2);
  }
  return std::max(g(lo + step * best_i), g(0.5 * (a + b)));
}

// Initial covector from a direction; the analytic side recovers (A, eta0).
struct Draw {
  Vec3 h0;
  HeisenbergParams params;
};

Draw draw_family3(const SphericalControlSet& set, Gen& g) {
  const Vec2 h12 = g.uniform(0.3, 2.0) * unit(g.uniform(0, kTwoPi));
  double h3 = g.uniform(0.2, 2.0) * (g.integer(0, 1) ? 1 : -1);
  Draw d;
  d.h0 = Vec3(h12.x(), h12.y(), h3);
  d.params.family = 3;
  d.params.A = set.omega().support(h12);
  d.params.h3 = h3;
  d.params.eta0 = set.trig().eta_of_angle(angle_0_2pi(h12));
  return d;
}

double max_state_error(const HeisenbergTrajectory& traj, const OdeTrajectory& ode) {
  double err = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      err = std::max(err, std::abs(traj[i].x(k) - ode.state[i](k)));
      err = std::max(err, std::abs(traj[i].h(k) - ode.state[i](3 + k)));
    }
  }
  return err;
}

}  // namespace

TEST_CASE("heisenberg_H examples") {
  const SphericalControlSet disc = disc_set();
  HamiltonianMax r = heisenberg_H(disc, 1, 0);
  CHECK(r.H == doctest::Approx(1));
  CHECK(r.u3_argmax.is_singleton());
  CHECK(std::abs(r.u3_argmax.lo) < 1e-15);
  r = heisenberg_H(disc, 1, 1);
  CHECK(std::abs(r.H - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(r.u3_argmax.lo - 1 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(r.H - brute_H(disc, 1, 1)) < 1e-9);

  const SphericalControlSet flat(ConvexBody::unit_disc(), Profile::constant(1, 1, 1));
  r = heisenberg_H(flat, 1, 0);
  CHECK(r.H == doctest::Approx(1));
  CHECK(r.u3_argmax.lo == -1);
  CHECK(r.u3_argmax.hi == 1);
}

TEST_CASE("heisenberg_H agrees with dense sampling for every profile kind") {
  Gen g(11);
  const std::vector<SphericalControlSet> sets = {
      disc_set(), lp_set(), square_set(),
      SphericalControlSet(square(), Profile::affine_cap(0.7)),
      SphericalControlSet(ConvexBody::unit_disc(),
                          Profile::samples({-2, -1, 0.5, 1.5}, {0.2, 1.0, 1.2, 0.0}))};
  for (const auto& set : sets) {
    for (int i = 0; i < 20; ++i) {
      const double A = g.uniform(0, 2);
      const double h3 = g.uniform(-2, 2);
      const HamiltonianMax r = heisenberg_H(set, A, h3);
      CHECK(std::abs(r.H - brute_H(set, A, h3)) < 1e-8);
      const double v = r.u3_argmax.mid();
      CHECK(std::abs(A * set.f()(v) + h3 * v - r.H) < 1e-12);
    }
  }
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(Profile::affine_cap(0), Error);
  CHECK_THROWS_AS(Profile::lp_cap(1), Error);
  try {
    SphericalControlSet(ConvexBody::unit_disc(), Profile::samples({-1, 0, 1}, {1, 0.2, 1}));
    FAIL("convex profile accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kInvalidBody);
  }
}

TEST_CASE("family 1 is a vertical ray") {
  SphericalControlSet set(ConvexBody::unit_disc(), Profile::constant(1, 0.5, 1));
  HeisenbergParams p;
  p.family = 1;
  p.A = 0;
  p.h3 = 2;
  for (const auto& s : heisenberg_extremal(set, p, grid(1, 10))) {
    CHECK(s.x(0) == 0);
    CHECK(s.x(1) == 0);
    CHECK(s.x(2) == doctest::Approx(s.t));
  }
  p.h3 = -1;
  const auto down = heisenberg_extremal(set, p, {0, 2});
  CHECK(down[1].x(2) == doctest::Approx(-1.0));
  p.A = 1;
  try {
    heisenberg_extremal(set, p, {0, 1});
    FAIL("family 1 with A > 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kInvalidFamilyParams);
  }
}

TEST_CASE("family 3 parameter checks and initial condition") {
  const SphericalControlSet set = disc_set();
  HeisenbergParams p;
  p.family = 3;
  p.A = 1;
  p.h3 = 0;
  CHECK_THROWS_AS(heisenberg_extremal(set, p, {0, 1}), Error);
  p.h3 = 0.7;
  p.eta0 = 0.4;
  const auto traj = heisenberg_extremal(set, p, {0, 0.5});
  CHECK(traj[0].x.norm() == 0);
  p.u3 = 0.9;
  try {
    heisenberg_extremal(set, p, {0, 1});
    FAIL("non-maximizing u3 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kInvalidFamilyParams);
  }
}

TEST_CASE("family 3 on the disc is a circular arc matching the ODE oracle") {
  const SphericalControlSet set = disc_set();
  Gen g(3);
  for (int i = 0; i < 5; ++i) {
    const Draw d = draw_family3(set, g);
    const auto ts = grid(1, 20);
    const auto traj = heisenberg_extremal(set, d.params, ts);
    const double r = d.params.A / std::abs(d.params.h3);
    const Vec2 c = -(d.params.A / d.params.h3) *
                   Vec2(std::sin(d.params.eta0), -std::cos(d.params.eta0));
    for (const auto& s : traj) {
      CHECK(std::abs((Vec2(s.x(0), s.x(1)) - c).norm() - r) < 1e-10);
    }
    const OdeTrajectory ode = pmp_ode_oracle(set, d.h0, ts);
    CHECK(ode.converged);
    CHECK(max_state_error(traj, ode) < 1e-6);
  }
}

TEST_CASE("family 3 stays on the rotated, scaled polar boundary") {
  Gen g(5);
  for (const auto& set : {lp_set(), square_set(), disc_set()}) {
    const ConvexBody polar_body = polar(set.omega());
    for (int i = 0; i < 10; ++i) {
      const Draw d = draw_family3(set, g);
      const auto p0 = set.trig().eval_polar(d.params.eta0);
      const double r = d.params.A / d.params.h3;
      for (const auto& s : heisenberg_extremal(set, d.params, grid(2, 40))) {
        const Vec2 z = Vec2(s.x(0), s.x(1)) + r * Vec2(p0.y(), -p0.x());
        CHECK(std::abs(polar_body.gauge(perp(z) / r) - 1) < 1e-8);
      }
    }
  }
}

TEST_CASE("families match the PMP ODE oracle across control sets") {
  Gen g(7);
  const ConvexBody polar_sq = polar(square());
  for (const auto& set : {disc_set(), square_set(), lp_set()}) {
    for (int i = 0; i < 3; ++i) {
      const auto ts = grid(1, 10);
      const Draw d3 = draw_family3(set, g);
      CHECK(max_state_error(heisenberg_extremal(set, d3.params, ts),
                            pmp_ode_oracle(set, d3.h0, ts)) < 1e-6);

      Draw d2 = draw_family3(set, g);
      d2.h0.z() = 0;
      d2.params.family = 2;
      d2.params.h3 = 0;
      OdeOptions opt;
      opt.midpoint_ties = set.f().kind() == Profile::Kind::kConst;
      CHECK(max_state_error(heisenberg_extremal(set, d2.params, ts),
                            pmp_ode_oracle(set, d2.h0, ts, opt)) < 1e-6);

      HeisenbergParams p1;
      p1.family = 1;
      p1.A = 0;
      p1.h3 = g.uniform(-1, 1);
      CHECK(max_state_error(heisenberg_extremal(set, p1, ts),
                            pmp_ode_oracle(set, Vec3(0, 0, p1.h3), ts)) < 1e-6);
    }
  }
}

TEST_CASE("oracle reports singular arcs") {
  const SphericalControlSet set = square_set();
  try {
    pmp_ode_oracle(set, Vec3(0.3, 0.1, 0), grid(1, 4));
    FAIL("singular u3 not reported");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kSingularArcEncountered);
  }
}

TEST_CASE("PMP residual, unit length and the maximum condition") {
  Gen g(9);
  for (const auto& set : {disc_set(), lp_set(), square_set()}) {
    const bool smooth = set.omega().shape() != ConvexBody::Shape::kPolygon;
    for (int i = 0; i < 34; ++i) {
      const Draw d = draw_family3(set, g);
      const double dt = 1e-5;
      std::vector<double> ts;
      for (int k = 0; k < 20; ++k) {
        const double t = 0.05 + 0.1 * k;
        ts.insert(ts.end(), {t - dt, t, t + dt});
      }
      const auto traj = heisenberg_extremal(set, d.params, ts);
      for (std::size_t k = 1; k + 1 < traj.size(); k += 3) {
        const auto& s = traj[k];
        CHECK(std::abs(set.gauge(s.u) - 1) < 1e-9);
        const double gap = set.support(s.h) - s.h.dot(s.u);
        CHECK(gap <= 1e-9);
        CHECK(gap >= -1e-9);
        if (smooth) {
          const double dh1 = (traj[k + 1].h(0) - traj[k - 1].h(0)) / (2 * dt);
          const double dh2 = (traj[k + 1].h(1) - traj[k - 1].h(1)) / (2 * dt);
          CHECK(std::abs(dh1 + s.h(2) * s.u(1)) < 1e-6);
          CHECK(std::abs(dh2 - s.h(2) * s.u(0)) < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("u3 schedules on a flat profile") {
  const SphericalControlSet set(ConvexBody::unit_disc(), Profile::constant(1, 1, 1));
  HeisenbergParams p;
  p.family = 2;
  p.A = 1;
  p.h3 = 0;
  p.eta0 = 0.3;
  p.u3_schedule = [](double t) { return t < 0.5 ? -0.5 : 0.5; };
  const auto traj = heisenberg_extremal(set, p, grid(1, 4));
  CHECK(traj.back().x(2) == doctest::Approx(std::cos(0.3) * std::sin(0.3) / 2).epsilon(1e-9));
  CHECK(traj[2].x(2) == doctest::Approx(-0.25 + std::cos(0.3) * std::sin(0.3) / 8).epsilon(1e-9));
}

TEST_CASE("singular family 2 along a square edge") {
  const SphericalControlSet set = square_set();
  const CompactTrig& trig = set.trig();
  const double eta0 = trig.eta_of_angle(0);
  const Face edge = set.omega().face(Vec2(1, 0));
  const Interval corr = trig.inverse_correspondence(eta0);
  CHECK((trig.eval(corr.lo) - edge.a).norm() < 1e-12);
  CHECK((trig.eval(corr.hi) - edge.b).norm() < 1e-12);
  const Vec2 w0 = edge.a;
  const Vec2 w1 = edge.b;
  const auto ts = grid(1, 20);

  const auto one = heisenberg_singular_x3(set, eta0, constant_beta(1), ts);
  const auto zero = heisenberg_singular_x3(set, eta0, constant_beta(0), ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    CHECK(std::abs(one[i].x(2) - w0.x() * w0.y() * t * t / 2) < 1e-14);
    CHECK(std::abs(zero[i].x(2) - w1.x() * w1.y() * t * t / 2) < 1e-14);
    CHECK((Vec2(one[i].x(0), one[i].x(1)) - t * w0).norm() < 1e-14);
  }

  // Time-stepped integration of x1' = u1, x2' = u2, x3' = u3 + x1 u2 with
  // alpha = (beta t)' = 2 t / T.
  const double T = 2;
  const auto ramp = heisenberg_singular_x3(set, eta0, ramp_beta(T), ts);
  auto rhs = [&](double t, const Vec3& x) {
    const double a = 2 * t / T;
    const Vec2 u = a * w0 + (1 - a) * w1;
    return Vec3(u.x(), u.y(), x(0) * u.y());
  };
  Vec3 x = Vec3::Zero();
  const int n = 20000;
  const double h = 1.0 / n;
  double err = 0;
  for (int k = 0; k < n; ++k) {
    const double t = k * h;
    const Vec3 k1 = rhs(t, x);
    const Vec3 k2 = rhs(t + h / 2, x + h / 2 * k1);
    const Vec3 k3 = rhs(t + h / 2, x + h / 2 * k2);
    const Vec3 k4 = rhs(t + h, x + h * k3);
    x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    if ((k + 1) % 1000 == 0) err = std::max(err, (x - ramp[(k + 1) / 1000].x).norm());
  }
  CHECK(err < 1e-8);

  CHECK_THROWS_AS(heisenberg_singular_x3(set, eta0, ramp_beta(T), grid(2, 20)), Error);
  try {
    heisenberg_singular_x3(disc_set(), 0.3, constant_beta(0.5), ts);
    FAIL("singleton correspondence accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kNotSingularAngle);
  }
}

}  // namespace geotrig
