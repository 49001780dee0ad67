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
#include <complex>

#include <Eigen/LU>

#include "doctest.h"
#include "generators.hpp"
#include "geotrig/error.hpp"
#include "geotrig/geodesics_lorentz.hpp"
#include "geotrig/oracles.hpp"

namespace geotrig {
namespace {

using Eigen::MatrixXcd;

std::vector<double> grid(double T, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(T * i / n);
  return g;
}

std::complex<double> cd_of(double re, double im) { return {re, im}; }

MatrixXcd bracket(const MatrixXcd& x, const MatrixXcd& y) { return x * y - y * x; }

// Fixed-step RK4 on q' = q (u1 f1 + u2 f2), independent of the Magnus code.
// A piecewise constant control is frozen at each substep midpoint so that
// jumps on grid points are not sampled from the wrong side.
std::vector<MatrixXcd> rk4_group(const GroupSpec& g, const std::function<Vec2(double)>& u,
                                 const std::vector<double>& t_grid, int sub,
                                 bool piecewise_constant = false) {
  const auto f = g.basis();
  auto A = [&](double t) {
    const Vec2 v = u(t);
    return MatrixXcd(v.x() * f[0] + v.y() * f[1]);
  };
  MatrixXcd q = MatrixXcd::Identity(g.matrix_size(), g.matrix_size());
  std::vector<MatrixXcd> out{q};
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double h = (t_grid[i] - t_grid[i - 1]) / sub;
    for (int j = 0; j < sub; ++j) {
      const double t = t_grid[i - 1] + j * h;
      auto At = [&](double s) { return A(piecewise_constant ? t + 0.5 * h : s); };
      const MatrixXcd k1 = q * At(t);
      const MatrixXcd k2 = (q + 0.5 * h * k1) * At(t + 0.5 * h);
      const MatrixXcd k3 = (q + 0.5 * h * k2) * At(t + 0.5 * h);
      const MatrixXcd k4 = (q + h * k3) * At(t + h);
      q += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    out.push_back(q);
  }
  return out;
}

struct FlowCase {
  GroupName group;
  double E;
  double eta0;
};

// Energies and starts that stay inside the domain over [0, 5]; sh2 and
// sl2_a_minus sweep through the slow region near the origin.
std::vector<FlowCase> flow_cases(const HyperTrig& ev, double far) {
  const Vec2 c0 = ev.eval_dual(0);
  return {{GroupName::kH3, 0.04, 0},
          {GroupName::kSe2, 1, 0},
          {GroupName::kSh2, -c0.x() * c0.x() + 0.01, far},
          {GroupName::kSl2APlus, -0.5, 0},
          {GroupName::kSl2AMinus, -c0.squaredNorm() + 0.01, far},
          {GroupName::kSu2, 2, 0}};
}

TEST_CASE("group structure constants match the bracket table") {
  for (const GroupSpec& g : unimodular_groups()) {
    CAPTURE(g.str());
    const auto f = g.basis();
    REQUIRE(f.size() == 3);
    CHECK((bracket(f[0], f[1]) - f[2]).norm() < 1e-15);
    CHECK((bracket(f[2], f[0]) - double(g.a) * f[1]).norm() < 1e-15);
    CHECK((bracket(f[2], f[1]) - double(g.b) * f[0]).norm() < 1e-15);
    CHECK(GroupSpec::parse(g.str()).name == g.name);
  }
  const GroupSpec aff = GroupSpec::parse("aff_r");
  const auto f = aff.basis();
  CHECK((bracket(f[0], f[1]) + f[0]).norm() < 1e-15);
  CHECK(GroupSpec::parse("h3").a == 0);
  CHECK(GroupSpec::parse("se2").a == 1);
  CHECK(GroupSpec::parse("sh2").b == 1);
  CHECK(GroupSpec::parse("sl2_a_minus").a == -1);
  CHECK(GroupSpec::parse("su2").b == -1);
  CHECK_THROWS_AS(GroupSpec::parse("so3"), Error);
}

TEST_CASE("horizontal reconstruction on one-parameter subgroups") {
  const auto t = grid(2, 20);
  const auto h3 = horizontal_reconstruct(GroupSpec::parse("h3"), [](double) { return Vec2(1, 0); }, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto x = GroupSpec::parse("h3").chart(h3.q[i]);
    CHECK(x[0] == doctest::Approx(t[i]).epsilon(1e-13));
    CHECK(std::abs(x[1]) < 1e-15);
    CHECK(std::abs(x[2]) < 1e-15);
  }
  const GroupSpec aff = GroupSpec::parse("aff_r");
  const auto ab = horizontal_reconstruct(aff, [](double) { return Vec2(0, 1); }, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(aff.chart(ab.q[i])[1] == doctest::Approx(std::exp(t[i])).epsilon(1e-12));
    CHECK(std::abs(aff.chart(ab.q[i])[0]) < 1e-15);
  }
}

TEST_CASE("horizontal reconstruction agrees with a fine RK4 and stays on the group") {
  auto u = [](double t) { return Vec2(std::cos(t), std::sin(2 * t) + 0.3); };
  const auto t = grid(3, 30);
  for (GroupName n : {GroupName::kH3, GroupName::kSe2, GroupName::kSh2, GroupName::kSl2APlus,
                      GroupName::kSl2AMinus, GroupName::kSu2, GroupName::kAffR}) {
    const GroupSpec g = GroupSpec::from(n);
    CAPTURE(g.str());
    const auto magnus = horizontal_reconstruct(g, u, t);
    const auto ref = rk4_group(g, u, t, 200);
    double err = 0;
    for (std::size_t i = 0; i < t.size(); ++i) err = std::max(err, (magnus.q[i] - ref[i]).norm());
    CHECK(err < 1e-9);
    const MatrixXcd& q = magnus.q.back();
    if (n == GroupName::kSu2) {
      CHECK((q * q.adjoint() - MatrixXcd::Identity(2, 2)).norm() < 1e-10);
    }
    if (n == GroupName::kSl2APlus || n == GroupName::kSl2AMinus) {
      CHECK(std::abs(q.determinant() - 1.0) < 1e-10);
    }
    CHECK((g.renormalize(q) - q).norm() < 1e-10);
  }
}

TEST_CASE("horizontal reconstruction from samples uses local cubics") {
  auto u = [](double t) { return Vec2(std::cos(t), std::sin(t)); };
  const auto t = grid(2, 400);
  std::vector<Vec2> samples;
  for (double s : t) samples.push_back(u(s));
  const GroupSpec g = GroupSpec::parse("se2");
  const auto a = horizontal_reconstruct(g, samples, t);
  const auto b = horizontal_reconstruct(g, u, t);
  CHECK((a.q.back() - b.q.back()).norm() < 1e-9);
  CHECK_THROWS_AS(horizontal_reconstruct(g, std::vector<Vec2>{Vec2(1, 0)}, t), Error);
}

TEST_CASE("vertical flow on h3 is uniform motion") {
  const HyperTrig ev(ConeBody::omega2());
  for (int sign : {1, -1}) {
    const auto v = vertical_flow(ev, GroupSpec::parse("h3"), 1, 0.2, sign, grid(3, 30));
    for (const auto& s : v) {
      CHECK(s.h.z() == doctest::Approx(sign).epsilon(1e-14));
      CHECK(s.eta == doctest::Approx(0.2 + sign * s.t).epsilon(1e-10));
    }
  }
}

TEST_CASE("se2 flow on the hyperbola oscillates between the turning points") {
  const HyperTrig ev(ConeBody::omega2());
  const GroupSpec g = GroupSpec::parse("se2");
  const auto t = grid(5, 100);
  const VerticalFlow flow(ev, g, 1, 0, 1, 5);
  CHECK(flow.turning_points() >= 2);
  double lo = 0;
  double hi = 0;
  for (double s : grid(5, 2000)) {
    lo = std::min(lo, flow.at(s).eta);
    hi = std::max(hi, flow.at(s).eta);
  }
  CHECK(hi == doctest::Approx(std::asinh(1.0)).epsilon(1e-6));
  CHECK(lo == doctest::Approx(-std::asinh(1.0)).epsilon(1e-6));
  // Oracle: the ODE recovers eta = asinh(h2).
  const auto v = vertical_flow(ev, g, 1, 0, 1, t);
  const auto o = pmp_ode_oracle(UnimodularProblem{ev.body(), g.a, g.b}, v[0].h, t);
  REQUIRE(o.converged);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(std::abs(v[i].eta - std::asinh(o.state[i](1))) < 1e-6);
  }
}

TEST_CASE("vertical flow matches the ODE oracle for every group and body") {
  OdeOptions opts;
  opts.tolerance = 1e-10;
  const auto t = grid(5, 50);
  struct Body {
    double alpha;
    double far;
  };
  for (Body b : {Body{2, -3}, Body{3, -3}, Body{1.5, -1}}) {
    const HyperTrig ev(ConeBody::alpha_hyperbola(b.alpha));
    for (const FlowCase& c : flow_cases(ev, b.far)) {
      const GroupSpec g = GroupSpec::from(c.group);
      CAPTURE(b.alpha);
      CAPTURE(g.str());
      const auto v = vertical_flow(ev, g, c.E, c.eta0, 1, t);
      const auto o = pmp_ode_oracle(UnimodularProblem{ev.body(), g.a, g.b}, v[0].h, t, opts);
      REQUIRE(o.converged);
      double err = 0;
      double energy = 0;
      double ham = 0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        err = std::max(err, (v[i].h - Vec3(o.state[i])).cwiseAbs().maxCoeff());
        energy = std::max(energy, std::abs(v[i].E_residual));
        ham = std::max(ham, std::abs(v[i].h.x() * v[i].u.x() + v[i].h.y() * v[i].u.y() +
                                     ev.body().antinorm(v[i].u)));
      }
      CHECK(err < 1e-6);
      CHECK(energy < 1e-8);
      CHECK(ham < 1e-9);
    }
  }
}

TEST_CASE("eta' = h3 along the flow") {
  const HyperTrig ev(ConeBody::alpha_hyperbola(3));
  const VerticalFlow flow(ev, GroupSpec::parse("su2"), 2, 0, 1, 5);
  for (double t : grid(4.8, 24)) {
    const double tt = t + 0.1;
    const auto d = finite_difference_oracle([&](double s) { return flow.at(s).eta; }, tt, 1e-3);
    CHECK(std::abs(d.value - flow.at(tt).h.z()) < 1e-6);
  }
}

TEST_CASE("turning-point starts, freezing and errors") {
  const HyperTrig ev(ConeBody::omega2());
  const GroupSpec se2 = GroupSpec::parse("se2");
  // Start on a simple root: the sign is forced inward.
  const double r = std::asinh(1.0);
  const auto v = vertical_flow(ev, se2, 1, r, 1, grid(2, 20));
  CHECK(std::abs(v[0].h.z()) < 1e-7);
  CHECK(v[1].eta < r);
  const auto o = pmp_ode_oracle(UnimodularProblem{ev.body(), 1, 0}, v[0].h, grid(2, 20));
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i].eta - std::asinh(o.state[i](1))) < 1e-6);
  // Radicand and its slope vanish: constant solution.
  const VerticalFlow frozen(ev, se2, 0, 0, 1, 5);
  CHECK(frozen.frozen());
  CHECK(frozen.at(3).eta == 0);
  CHECK(frozen.at(3).h.z() == 0);
  CHECK(frozen.at(3).u.isApprox(Vec2(1, 0)));
  // Radicand negative at the start.
  try {
    vertical_flow(ev, se2, 1, 2, 1, grid(1, 2));
    FAIL("expected EnergyViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kEnergyViolation);
  }
  // sh2 with a large energy runs to infinity in finite time.
  try {
    vertical_flow(ev, GroupSpec::parse("sh2"), 1, 0, 1, grid(50, 10));
    FAIL("expected QuadratureBlowup");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kQuadratureBlowup);
  }
  CHECK_THROWS_AS(vertical_flow(ev, GroupSpec::parse("aff_r"), 1, 0, 1, grid(1, 2)), Error);
  CHECK_THROWS_AS(vertical_flow(ev, se2, 1, 0, 0, grid(1, 2)), Error);
}

TEST_CASE("unimodular extremal chart solves the horizontal equation") {
  // On h3 eta = eta0 - sqrt(E) t, and the alpha = 3 control has a square-root
  // kink where eta crosses 0.
  const HyperTrig ev(ConeBody::alpha_hyperbola(3));
  const GroupSpec g = GroupSpec::parse("h3");
  const auto t = grid(3, 30);
  const double E = 0.5;
  const auto s = unimodular_extremal(ev, g, E, 0.1, -1, t);
  const VerticalFlow flow(ev, g, E, 0.1, -1, 3);
  const double tk = 0.1 / std::sqrt(E);
  const auto kinks = flow.kink_times(3);
  REQUIRE(kinks.size() == 1);
  CHECK(kinks[0] == doctest::Approx(tk).epsilon(1e-12));
  // x1' = u1, x2' = u2, x3' = x1 u2 by RK4 in s with t = tk -+ s^2, which
  // removes the kink.
  auto rhs = [&](double tt, const Vec3& y) {
    const Vec2 u = flow.at(tt).u;
    return Vec3(u.x(), u.y(), y.x() * u.y());
  };
  auto advance = [&](Vec3 x, double ta, double tb) {
    const double side = ta + tb < 2 * tk ? -1 : 1;
    const double sa = std::sqrt(std::abs(ta - tk));
    const double sb = std::sqrt(std::abs(tb - tk));
    const int sub = 80;
    const double ds = (sb - sa) / sub;
    auto f = [&](double sv, const Vec3& y) { return Vec3(2 * side * sv * rhs(tk + side * sv * sv, y)); };
    for (int j = 0; j < sub; ++j) {
      const double s0 = sa + j * ds;
      const Vec3 k1 = f(s0, x);
      const Vec3 k2 = f(s0 + ds / 2, x + ds / 2 * k1);
      const Vec3 k3 = f(s0 + ds / 2, x + ds / 2 * k2);
      const Vec3 k4 = f(s0 + ds, x + ds * k3);
      x += ds / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return x;
  };
  Vec3 x = Vec3::Zero();
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i - 1] < tk && t[i] > tk) {
      x = advance(advance(x, t[i - 1], tk), tk, t[i]);
    } else {
      x = advance(x, t[i - 1], t[i]);
    }
    CHECK(std::abs(s[i].q[0] - x.x()) < 1e-9);
    CHECK(std::abs(s[i].q[1] - x.y()) < 1e-9);
    CHECK(std::abs(s[i].q[2] - x.z()) < 1e-9);
  }
}

TEST_CASE("Lobachevsky generic case") {
  const auto t = grid(1.2, 60);
  SUBCASE("hyperbola: b^2 - (a - c2)^2 = c1^2") {
    const HyperTrig ev(ConeBody::omega2());
    LobachevskyParams p;
    p.c1 = 1;
    p.c2 = 0;
    for (const auto& s : lobachevsky_extremal(ev, p, t)) {
      CHECK(std::abs(s.q[1] * s.q[1] - s.q[0] * s.q[0] - 1) < 1e-8);
    }
    p.c1 = 2;
    p.c2 = -0.5;
    for (const auto& s : lobachevsky_extremal(ev, p, grid(0.6, 10))) {
      CHECK(std::abs(s.q[1] * s.q[1] - (s.q[0] + 0.5) * (s.q[0] + 0.5) - 4) < 1e-8);
    }
  }
  SUBCASE("matches the ODE oracle and the system") {
    OdeOptions opts;
    opts.tolerance = 1e-10;
    for (double alpha : {2.0, 3.0, 1.5}) {
      const HyperTrig ev(ConeBody::alpha_hyperbola(alpha));
      LobachevskyParams p;
      p.eta0 = -0.3;
      const auto s = lobachevsky_extremal(ev, p, t);
      const auto o = pmp_ode_oracle(LobachevskyProblem{ev.body()}, Vec2(s[0].h.x(), s[0].h.y()), t, opts);
      REQUIRE(o.converged);
      for (std::size_t i = 0; i < t.size(); ++i) {
        const Eigen::Vector4d y(s[i].q[0], s[i].q[1], s[i].h.x(), s[i].h.y());
        CHECK((y - Eigen::Vector4d(o.state[i])).cwiseAbs().maxCoeff() < 1e-6);
        CHECK(std::abs(s[i].E_residual) < 1e-9);
      }
      CHECK(s[0].q[0] == doctest::Approx(0).epsilon(1e-14));
      CHECK(s[0].q[1] == doctest::Approx(1).epsilon(1e-14));
      // a' = b u1, b' = b u2.
      const LobachevskyParams q = p;
      for (std::size_t i = 1; i + 1 < t.size(); i += 7) {
        auto comp = [&](int k) {
          return [&, k](double tt) { return lobachevsky_extremal(ev, q, {0.0, tt})[1].q[k]; };
        };
        const auto da = finite_difference_oracle(comp(0), t[i], 1e-3);
        const auto db = finite_difference_oracle(comp(1), t[i], 1e-3);
        CHECK(std::abs(da.value - s[i].q[1] * s[i].u.x()) < 1e-6);
        CHECK(std::abs(db.value - s[i].q[1] * s[i].u.y()) < 1e-6);
      }
    }
  }
  SUBCASE("blowup and invalid constants") {
    const HyperTrig ev(ConeBody::omega2());
    LobachevskyParams p;
    try {
      lobachevsky_extremal(ev, p, grid(2, 4));
      FAIL("expected QuadratureBlowup");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kQuadratureBlowup);
    }
    p.c1 = -1;
    CHECK_THROWS_AS(lobachevsky_extremal(ev, p, t), Error);
    p.c1 = 0;
    CHECK_THROWS_AS(lobachevsky_extremal(ev, p, t), Error);
  }
}

TEST_CASE("Lobachevsky horizontal facet case") {
  // Flat top at height 1 from (-1, 1) to (1, 1).
  const ConeBody flat = ConeBody::polyline({{1, 1}, {-1, 1}}, Vec2(1, 0.5).normalized(),
                                           Vec2(-1, 0.5).normalized());
  HyperOptions opt;
  opt.allow_degenerate = true;  // the end rays run parallel to the asymptotes
  const HyperTrig ev(flat, opt);
  const HorizontalFacet f = horizontal_facet(ev);
  CHECK(f.c4 == doctest::Approx(1).epsilon(1e-12));
  CHECK(f.x_lo == doctest::Approx(-1).epsilon(1e-12));
  CHECK(f.x_hi == doctest::Approx(1).epsilon(1e-12));
  LobachevskyParams p;
  p.kind = LorentzKind::kTimelikeSingularHorizontal;
  p.c3 = 2;
  p.u1 = 0.5;
  const auto t = grid(2, 20);
  for (const auto& s : lobachevsky_extremal(ev, p, t)) {
    CHECK(std::abs(std::log(s.q[1]) - std::log(2.0) - s.t) < 1e-10);
    CHECK(s.q[0] == doctest::Approx(0.5 * 2 * std::expm1(s.t)).epsilon(1e-12));
    CHECK(std::abs(s.E_residual) < 1e-9);
  }
  p.u1 = 3;
  CHECK_THROWS_AS(lobachevsky_extremal(ev, p, t), Error);

  // The rotated hyperbola touches the line y = 1 at a single point.
  const HyperTrig up(ConeBody::alpha_hyperbola(2, kPi / 2));
  LobachevskyParams q;
  q.kind = LorentzKind::kTimelikeSingularHorizontal;
  for (const auto& s : lobachevsky_extremal(up, q, t)) {
    CHECK(std::abs(std::log(s.q[1]) - s.t) < 1e-10);
    CHECK(std::abs(s.q[0]) < 1e-12);
  }
  try {
    horizontal_facet(HyperTrig(ConeBody::omega2()));
    FAIL("expected HorizontalFacetAbsent");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kHorizontalFacetAbsent);
  }
}

TEST_CASE("lightlike extremals on Aff+(R) are the two boundary rays") {
  const ConeBody body = ConeBody::alpha_hyperbola(3, 0.2);
  const HyperTrig ev(body);
  const auto t = grid(2, 20);
  for (int k : {0, 1}) {
    LobachevskyParams p;
    p.kind = LorentzKind::kLightlike;
    p.ray_index = k;
    const Vec2 e = body.ray_direction(k);
    for (const auto& s : lobachevsky_extremal(ev, p, t)) {
      CHECK(body.antinorm(s.u) == 0);
      CHECK(s.u.isApprox(e));
      CHECK(s.q[1] == doctest::Approx(std::exp(e.y() * s.t)).epsilon(1e-13));
      // Straight line through the identity parallel to the ray.
      CHECK(std::abs(cross(Vec2(s.q[0], s.q[1] - 1), e)) < 1e-12);
      CHECK(std::abs(s.E_residual) < 1e-12);
    }
  }
  CHECK_THROWS_AS(lightlike_extremal(body, GroupSpec::parse("aff_r"), 0, {1.0}, t), Error);
}

// RK4 of the vertical system with a piecewise constant control, frozen at
// each substep midpoint.
std::vector<Vec3> vertical_rk4(const GroupSpec& g, const std::function<Vec2(double)>& u,
                               const Vec3& h0, const std::vector<double>& t, int sub) {
  std::vector<Vec3> out{h0};
  Vec3 h = h0;
  Vec2 v;
  auto rhs = [&](double, const Vec3& y) {
    return Vec3(-y.z() * v.y(), y.z() * v.x(), -g.a * y.y() * v.x() - g.b * y.x() * v.y());
  };
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double dt = (t[i] - t[i - 1]) / sub;
    for (int j = 0; j < sub; ++j) {
      const double t0 = t[i - 1] + j * dt;
      v = u(t0 + 0.5 * dt);
      const Vec3 k1 = rhs(t0, h);
      const Vec3 k2 = rhs(t0 + dt / 2, h + dt / 2 * k1);
      const Vec3 k3 = rhs(t0 + dt / 2, h + dt / 2 * k2);
      const Vec3 k4 = rhs(t0 + dt, h + dt * k3);
      h += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    out.push_back(h);
  }
  return out;
}

TEST_CASE("lightlike extremals on unimodular groups") {
  const ConeBody body = ConeBody::omega2();
  SUBCASE("h3 with one switch") {
    const GroupSpec g = GroupSpec::parse("h3");
    std::vector<double> t = grid(2, 40);
    const auto s = lightlike_extremal(body, g, 0, {0.8}, t, 1.0);
    for (const auto& x : s) {
      CHECK(std::abs(x.E_residual) < 1e-12);
      CHECK(body.antinorm(x.u) == 0);
      CHECK(x.u.isApprox(body.ray_direction(x.t < 0.8 ? 0 : 1)));
    }
    // Switches cut the grid interval, so compare at grid points on each side.
    auto u = [&](double tt) { return body.ray_direction(tt < 0.8 ? 0 : 1); };
    const auto ref = vertical_rk4(g, u, s[0].h, {0, 0.8, 2.0}, 400);
    CHECK((s.back().h - ref.back()).norm() < 1e-12);
    CHECK(s[16].h.head<2>().norm() < 1e-12);  // h12 passes through 0 at the switch
    try {
      lightlike_extremal(body, g, 0, {0.5, 1.5}, t, 1.0);
      FAIL("expected TooManySwitches");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kTooManySwitches);
    }
    // With h3 < 0 the covector leaves the dual ray before the switch.
    CHECK_THROWS_AS(lightlike_extremal(body, g, 0, {0.8}, t, -1.0), Error);
  }
  SUBCASE("su2 with two switches") {
    const GroupSpec g = GroupSpec::parse("su2");
    const double t1 = 0.5;
    const double t2 = 0.5 + kPi;
    const std::vector<double> t{0, 0.25, t1, 1.0, 2.0, 3.0, t2, 4.0, 5.0};
    const auto s = lightlike_extremal(body, g, 0, {t1, t2}, t, 1.0);
    auto u = [&](double tt) { return body.ray_direction(tt < t1 || tt >= t2 ? 0 : 1); };
    const auto ref = vertical_rk4(g, u, s[0].h, t, 2000);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK((s[i].h - ref[i]).norm() < 1e-9);
      CHECK(std::abs(s[i].E_residual) < 1e-12);
    }
    const auto q = rk4_group(g, u, {0, t1}, 2000, true);
    const auto ss = lightlike_extremal(body, g, 0, {t1, t2}, {0, t1, 5.0}, 1.0);
    MatrixXcd m(2, 2);
    m << cd_of(ss[1].q[0], ss[1].q[1]), 0, cd_of(ss[1].q[2], ss[1].q[3]), 0;
    CHECK(std::abs(m(0, 0) - q.back()(0, 0)) < 1e-9);
    CHECK(std::abs(m(1, 0) - q.back()(1, 0)) < 1e-9);
    // A switch away from a zero of the covector is rejected.
    CHECK_THROWS_AS(lightlike_extremal(body, g, 0, {t1, 2.0}, t, 1.0), Error);
  }
  CHECK_THROWS_AS(lightlike_extremal(body, GroupSpec::parse("se2"), 2, {}, grid(1, 2)), Error);
}

}  // namespace
}  // namespace geotrig
