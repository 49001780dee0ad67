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

#include "geotrig/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>

#include "geotrig/error.hpp"
#include "geotrig/extremal.hpp"
#include "geotrig/geodesics_heisenberg.hpp"
#include "geotrig/geodesics_lorentz.hpp"

namespace geotrig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Reports = std::vector<OracleReport>;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : e_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(e_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(e_); }

 private:
  std::mt19937_64 e_;
};

std::vector<double> grid(double T, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(T * i / n);
  return g;
}

// Evenly spaced interior points of [lo, hi] clipped to +-limit.
std::vector<double> angle_grid(Interval d, double limit, int n) {
  const double lo = std::max(d.lo, -limit);
  const double hi = std::min(d.hi, limit);
  const double pad = 1e-3 * (hi - lo);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + pad + (hi - lo - 2 * pad) * (i + 0.5) / n);
  return out;
}

double sample_angle(Rng& g, Interval d, double limit) {
  const double lo = std::max(d.lo, -limit);
  const double hi = std::min(d.hi, limit);
  const double pad = 1e-3 * (hi - lo);
  return g.uniform(lo + pad, hi - pad);
}

void add(Reports& r, std::string name, double err, double tol, long samples) {
  r.push_back(make_report(std::move(name), err, tol, samples));
}

HyperOptions degenerate() {
  HyperOptions o;
  o.allow_degenerate = true;
  return o;
}

struct NamedCompact {
  const char* name;
  ConvexBody body;
};

struct NamedCone {
  const char* name;
  ConeBody body;
  bool degenerate = false;
};

ConvexBody square() { return ConvexBody::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }
ConvexBody pentagon() {
  return ConvexBody::polygon({{2, 0}, {1, 1.5}, {-1, 1}, {-1.5, -0.5}, {0.5, -1.2}});
}
ConeBody test_polyline() {
  return ConeBody::polyline({{1.2, -1}, {1, 0}, {1.1, 0.8}}, {1, -1.5}, {1, 1.2});
}

std::vector<NamedCompact> compact_bodies() {
  return {{"disc", ConvexBody::unit_disc()},
          {"ellipse_2_1", ConvexBody::ellipse(2, 1)},
          {"square", square()},
          {"lp3", ConvexBody::lp_ball(3)},
          {"pentagon", pentagon()}};
}

std::vector<NamedCone> cone_bodies() {
  return {{"omega2", ConeBody::omega2()},
          {"alpha3", ConeBody::alpha_hyperbola(3)},
          {"alpha1.5", ConeBody::alpha_hyperbola(1.5)},
          {"alpha3_rot0.4", ConeBody::alpha_hyperbola(3, 0.4)},
          {"polyline", test_polyline(), true}};
}

HyperTrig evaluator(const NamedCone& c) {
  return c.degenerate ? HyperTrig(c.body, degenerate()) : HyperTrig(c.body);
}

// (x^b - |y|^b)^(1/b) for the unrotated alpha hyperbola with exponent b.
double alpha_antinorm(double b, const Vec2& x) {
  if (std::abs(x.y()) >= x.x()) return 0;
  return std::pow(std::pow(x.x(), b) - std::pow(std::abs(x.y()), b), 1 / b);
}

// Boundary samples graded by y = sinh(s): dense near the vertex, long reach
// along the asymptotes.
std::vector<Vec2> alpha_samples(double alpha, double ymax, int n) {
  std::vector<Vec2> out;
  const double smax = std::asinh(ymax);
  for (int k = 0; k < n; ++k) {
    const double y = std::sinh(-smax + 2 * smax * k / (n - 1));
    out.emplace_back(std::pow(1 + std::pow(std::abs(y), alpha), 1 / alpha), y);
  }
  return out;
}

// Criterion 1: classical functions on the disc and the hyperbola.
Reports classical_recovery() {
  Reports r;
  const CompactTrig disc(ConvexBody::unit_disc());
  double e = 0;
  const int n = 20001;
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / (n - 1);
    const Vec2 p = disc.eval(t);
    e = std::max({e, std::abs(p.x() - std::cos(t)), std::abs(p.y() - std::sin(t))});
  }
  add(r, "trig/classical_disc", e, 1e-9, n);
  const HyperTrig w2(ConeBody::omega2());
  e = 0;
  for (int i = 0; i < 6001; ++i) {
    const double t = -3 + 6.0 * i / 6000;
    const Vec2 p = w2.eval(t);
    e = std::max({e, std::abs(p.x() - std::cosh(t)), std::abs(p.y() - std::sinh(t))});
  }
  add(r, "trig/classical_hyperbola", e, 1e-8, 6001);
  return r;
}

// Criterion 2: duality inequalities on 200 x 200 grids.
Reports duality_inequalities(const VerifyOptions& o) {
  Reports r;
  const int n = 200;
  for (const NamedCompact& b : compact_bodies()) {
    const CompactTrig ev(b.body);
    std::vector<double> th;
    std::vector<double> et;
    for (int i = 0; i < n; ++i) {
      th.push_back(ev.period() * (i + 0.5) / n);
      et.push_back(ev.polar_period() * (i + 0.25) / n);
    }
    const DualityStats s = compact_duality_grid(ev, th, et, o.exec);
    const std::string p = std::string("duality/compact/") + b.name;
    add(r, p + "/inequality", s.violation, 1e-12, s.samples);
    add(r, p + "/equality_on_correspondence", s.equality_error, 1e-8, 3L * n);
    add(r, p + "/strict_off_correspondence", static_cast<double>(s.false_equalities), 0, s.samples);
  }
  for (const NamedCone& c : cone_bodies()) {
    const HyperTrig ev = evaluator(c);
    const DualityStats s = hyper_duality_grid(ev, angle_grid(ev.domain(), 3, n),
                                              angle_grid(ev.dual_domain(), 3, n), o.exec);
    const std::string p = std::string("duality/cone/") + c.name;
    add(r, p + "/inequality", s.violation, 1e-12, s.samples);
    add(r, p + "/equality_on_correspondence", s.equality_error, 1e-8, 3L * n);
    add(r, p + "/strict_off_correspondence", static_cast<double>(s.false_equalities), 0, s.samples);
  }
  return r;
}

// Criterion 3: involutions, plus the polar radial function against support
// sampling.
Reports involutions() {
  Reports r;
  const std::vector<NamedCompact> compact = {{"pentagon", pentagon()},
                                             {"ellipse_2_1", ConvexBody::ellipse(2, 1)},
                                             {"lp3", ConvexBody::lp_ball(3)},
                                             {"lp1.5", ConvexBody::lp_ball(1.5)}};
  for (const NamedCompact& b : compact) {
    add(r, std::string("duality/bipolar/") + b.name, hausdorff(polar(polar(b.body)), b.body), 1e-6, 4096);
    std::vector<Vec2> samples = b.body.vertices();
    if (b.body.shape() != ConvexBody::Shape::kPolygon) {
      for (int k = 0; k < 200000; ++k) samples.push_back(b.body.boundary_point(kTwoPi * k / 200000));
    }
    const ConvexBody p = polar(b.body);
    double e = 0;
    for (int k = 0; k < 256; ++k) {
      const double phi = kTwoPi * (k + 0.3) / 256;
      e = std::max(e, std::abs(p.radial(phi) - polar_radial_oracle(samples, unit(phi))));
    }
    add(r, std::string("duality/polar_oracle/") + b.name, e, 1e-6, 256);
  }
  const std::vector<NamedCone> cones = {{"alpha1.5", ConeBody::alpha_hyperbola(1.5)},
                                        {"alpha2", ConeBody::omega2()},
                                        {"alpha3", ConeBody::alpha_hyperbola(3)},
                                        {"ray_segment", ConeBody::ray_segment({1, 1}, {1, -1})}};
  for (const NamedCone& c : cones) {
    add(r, std::string("duality/biantipolar/") + c.name,
        hausdorff_truncated(antipolar(antipolar(c.body)), c.body, 100), 1e-6, 2000);
  }
  return r;
}

// Criterion 4: closed forms of antipolar sets.
Reports antipolar_closed_forms() {
  Reports r;
  for (double alpha : {1.5, 2.0, 3.0}) {
    const double beta = alpha / (alpha - 1);
    const ConeBody d = antipolar(ConeBody::alpha_hyperbola(alpha));
    const auto samples = alpha_samples(alpha, 1e4, 400001);
    double closed = 0;
    double oracle = 0;
    for (int k = 1; k < 400; ++k) {
      const Vec2 u = unit(-kPi / 4 + kPi / 2 * k / 400);
      closed = std::max(closed, std::abs(d.antinorm(u) - alpha_antinorm(beta, u)));
      if (k % 10 == 0) {
        oracle = std::max(oracle, std::abs(d.antinorm(u) - antipolar_antinorm_oracle(samples, u)));
      }
    }
    char name[64];
    std::snprintf(name, sizeof name, "duality/antipolar_alpha%g/closed_form", alpha);
    add(r, name, closed, 1e-6, 399);
    std::snprintf(name, sizeof name, "duality/antipolar_alpha%g/oracle", alpha);
    add(r, name, oracle, 1e-6, 39);
  }
  // {|q| <= p - 1}: boundary points have antinorm 1, membership elsewhere.
  const ConeBody ap = antipolar(ConeBody::ray_segment({1, 1}, {1, -1}));
  double e = 0;
  for (int k = 0; k <= 2000; ++k) {
    const double s = -10 + 20.0 * k / 2000;
    e = std::max(e, std::abs(ap.antinorm(Vec2(1 + std::abs(s), s)) - 1));
  }
  add(r, "duality/antipolar_ray_segment/boundary", e, 1e-9, 2001);
  Rng g(11);
  long wrong = 0;
  for (int k = 0; k < 2000; ++k) {
    const Vec2 w(g.uniform(-1, 5), g.uniform(-5, 5));
    const double margin = w.x() - 1 - std::abs(w.y());
    if (std::abs(margin) < 1e-9) continue;
    if ((ap.antinorm(w) >= 1) != (margin > 0)) ++wrong;
  }
  add(r, "duality/antipolar_ray_segment/membership", static_cast<double>(wrong), 0, 2000);
  return r;
}

// Criterion 5: star and star-star swap under the antipolar map.
Reports dual_properties() {
  Reports r;
  const ConeBody rs = ConeBody::ray_segment({1, 1}, {1, -1});
  const std::vector<NamedCone> bodies = {
      {"omega2", ConeBody::omega2()},
      {"ray_segment", rs},
      {"antipolar_ray_segment", antipolar(rs)},
      {"polyline", test_polyline()},
      {"polyline_on_ray", ConeBody::polyline({{1, -1}, {1, 0}}, {1, -1}, {1, 1.2})}};
  for (const NamedCone& c : bodies) {
    const PropertyReport p = check_properties(c.body);
    const PropertyReport q = check_properties(antipolar(c.body));
    const int bad = (p.star != q.star_star) + (p.star_star != q.star);
    add(r, std::string("duality/dual_properties/") + c.name, bad, 0, 2);
  }
  return r;
}

// Criterion 6: derivative theorems at random smooth angles.
Reports derivative_theorems(const VerifyOptions& o) {
  Reports r;
  Rng g(o.seed + 6);
  const int per_family = 1000;
  {
    const std::vector<ConvexBody> bodies = {ConvexBody::unit_disc(), ConvexBody::ellipse(2, 1),
                                            ConvexBody::lp_ball(3)};
    std::vector<CompactTrig> evs(bodies.begin(), bodies.end());
    double e = 0;
    for (int k = 0; k < per_family; ++k) {
      const CompactTrig& ev = evs[static_cast<std::size_t>(k % 3)];
      const double t = g.uniform(0, ev.period());
      const Vec2 w = ev.eval_polar(ev.correspondence(t).mid());
      const auto dc = finite_difference_oracle([&](double s) { return ev.eval(s).x(); }, t, 1e-6);
      const auto ds = finite_difference_oracle([&](double s) { return ev.eval(s).y(); }, t, 1e-6);
      e = std::max({e, std::abs(dc.value + w.y()), std::abs(ds.value - w.x())});
    }
    add(r, "trig/derivative_compact", e, 1e-5, per_family);
  }
  {
    std::vector<HyperTrig> evs;
    for (double a : {2.0, 3.0, 1.5}) evs.emplace_back(ConeBody::alpha_hyperbola(a));
    double e = 0;
    for (int k = 0; k < per_family; ++k) {
      const HyperTrig& ev = evs[static_cast<std::size_t>(k % 3)];
      const double t = sample_angle(g, ev.domain(), 3);
      const Vec2 d = ev.derivative(t);
      const auto fx = finite_difference_oracle([&](double s) { return ev.eval(s).x(); }, t, 1e-6);
      const auto fy = finite_difference_oracle([&](double s) { return ev.eval(s).y(); }, t, 1e-6);
      e = std::max({e, std::abs(fx.value - d.x()), std::abs(fy.value - d.y())});
    }
    add(r, "trig/derivative_cone", e, 1e-5, per_family);
  }
  return r;
}

// Doubled sector areas against the shoelace oracle.
Reports area_oracles(const VerifyOptions& o) {
  Reports r;
  Rng g(o.seed + 60);
  for (const NamedCompact& b : compact_bodies()) {
    const CompactTrig ev(b.body);
    double e = 0;
    for (int k = 0; k < 5; ++k) {
      const double phi = g.uniform(0.01, kTwoPi - 0.01);
      std::vector<Vec2> poly;
      const int n = 100000;
      for (int j = 1; j < n; ++j) poly.push_back(b.body.boundary_point(phi * j / n));
      const double oracle = sector_area_oracle(poly, b.body.boundary_point(0), b.body.boundary_point(phi));
      e = std::max(e, std::abs(ev.theta_of_angle(phi) - oracle) / std::max(1.0, oracle));
    }
    add(r, std::string("trig/sector_area/") + b.name, e, 1e-8, 5);
  }
  for (const NamedCone& c : cone_bodies()) {
    const HyperTrig ev = evaluator(c);
    double e = 0;
    for (int k = 0; k < 4; ++k) {
      const double t = sample_angle(g, ev.domain(), 4);
      const Vec2 p = ev.eval(t);
      const Vec2 from = ev.base_point();
      std::vector<Vec2> poly;
      const int n = 100000;
      for (int j = 1; j < n; ++j) {
        const Vec2 dir = from + (p - from) * (static_cast<double>(j) / n);
        poly.push_back(dir / c.body.antinorm(dir));
      }
      const double oracle = sector_area_oracle(poly, from, p);
      e = std::max(e, std::abs(t - oracle) / std::max(1.0, std::abs(oracle)));
    }
    add(r, std::string("trig/contour_area/") + c.name, e, 1e-7, 4);
  }
  return r;
}

// Criterion 7: Heisenberg families against the PMP oracle.
struct HeisDraw {
  Vec3 h0;
  HeisenbergParams params;
};

HeisDraw draw_family3(const SphericalControlSet& set, Rng& g) {
  const Vec2 h12 = g.uniform(0.3, 2.0) * unit(g.uniform(0, kTwoPi));
  const double h3 = g.uniform(0.2, 2.0) * (g.integer(0, 1) ? 1 : -1);
  HeisDraw d;
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

Reports heisenberg_equivalence(const VerifyOptions& o) {
  Reports r;
  const std::vector<SphericalControlSet> sets = {
      SphericalControlSet(ConvexBody::unit_disc(), Profile::sqrt_cap()),
      SphericalControlSet(square(), Profile::constant(1, 1, 1)),
      SphericalControlSet(ConvexBody::lp_ball(3), Profile::lp_cap(3))};
  const char* names[] = {"disc_sqrt_cap", "square_const", "lp3"};
  const int families[] = {3, 3, 2, 1};
  const int draws = 20;
  std::vector<double> err(draws, 0);
  std::vector<double> polar_err(draws, 0);
  std::vector<int> set_of(draws);
  std::vector<HeisDraw> plan(draws);
  Rng g(o.seed + 7);
  for (int i = 0; i < draws; ++i) {
    set_of[i] = i % 3;
    const SphericalControlSet& set = sets[static_cast<std::size_t>(set_of[i])];
    const int fam = families[(i / 3) % 4];
    HeisDraw d = draw_family3(set, g);
    if (fam == 2) {
      d.h0.z() = 0;
      d.params.family = 2;
      d.params.h3 = 0;
    } else if (fam == 1) {
      d.params = HeisenbergParams{};
      d.params.family = 1;
      d.params.A = 0;
      d.params.h3 = g.uniform(-1, 1);
      d.h0 = Vec3(0, 0, d.params.h3);
    }
    plan[static_cast<std::size_t>(i)] = d;
  }
  const auto ts = grid(1, 20);
  parallel_for(draws, o.exec, [&](long i) {
    const SphericalControlSet& set = sets[static_cast<std::size_t>(set_of[i])];
    const HeisDraw& d = plan[static_cast<std::size_t>(i)];
    OdeOptions opt;
    opt.midpoint_ties = d.params.family == 2 && set.f().kind() == Profile::Kind::kConst;
    const OdeTrajectory ode = pmp_ode_oracle(set, d.h0, ts, opt);
    err[static_cast<std::size_t>(i)] = ode.converged ? max_state_error(heisenberg_extremal(set, d.params, ts), ode) : kInf;
    if (d.params.family == 3) {
      const ConvexBody polar_body = polar(set.omega());
      const Vec2 p0 = set.trig().eval_polar(d.params.eta0);
      const double rr = d.params.A / d.params.h3;
      double e = 0;
      for (const auto& s : heisenberg_extremal(set, d.params, grid(2, 40))) {
        const Vec2 z = Vec2(s.x(0), s.x(1)) + rr * Vec2(p0.y(), -p0.x());
        e = std::max(e, std::abs(polar_body.gauge(perp(z) / rr) - 1));
      }
      polar_err[static_cast<std::size_t>(i)] = e;
    }
  });
  for (int s = 0; s < 3; ++s) {
    double e = 0;
    double pe = 0;
    long n = 0;
    for (int i = 0; i < draws; ++i) {
      if (set_of[i] != s) continue;
      e = std::max(e, err[static_cast<std::size_t>(i)]);
      pe = std::max(pe, polar_err[static_cast<std::size_t>(i)]);
      ++n;
    }
    add(r, std::string("heisenberg/oracle/") + names[s], e, 1e-6, n);
    add(r, std::string("heisenberg/polar_boundary/") + names[s], pe, 1e-8, n);
  }
  return r;
}

// Criterion 8: Lobachevsky cases.
Reports lobachevsky_cases() {
  Reports r;
  const HyperTrig w2(ConeBody::omega2());
  const auto ts = grid(1.2, 60);
  {
    struct C {
      std::optional<double> c1, c2;
      double eta0;
    };
    double e = 0;
    long n = 0;
    for (const C& c : {C{std::nullopt, std::nullopt, 0.0}, C{2.0, -0.5, 0.2}, C{0.7, 0.3, -0.4}}) {
      LobachevskyParams p;
      p.c1 = c.c1;
      p.c2 = c.c2;
      p.eta0 = c.eta0;
      const double c1 = c.c1.value_or(1 / std::cosh(c.eta0));
      const double c2 = c.c2.value_or(-c1 * std::sinh(c.eta0));
      for (const auto& s : lobachevsky_extremal(w2, p, ts)) {
        e = std::max(e, std::abs(s.q[1] * s.q[1] - (s.q[0] - c2) * (s.q[0] - c2) - c1 * c1));
        ++n;
      }
    }
    add(r, "lobachevsky/generic/hyperbola_invariant", e, 1e-8, n);
  }
  {
    OdeOptions opts;
    opts.tolerance = 1e-10;
    double e = 0;
    long n = 0;
    for (double alpha : {2.0, 3.0, 1.5}) {
      const HyperTrig ev(ConeBody::alpha_hyperbola(alpha));
      LobachevskyParams p;
      p.eta0 = -0.3;
      const auto s = lobachevsky_extremal(ev, p, ts);
      const auto ode = pmp_ode_oracle(LobachevskyProblem{ev.body()}, Vec2(s[0].h.x(), s[0].h.y()), ts, opts);
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const Eigen::Vector4d y(s[i].q[0], s[i].q[1], s[i].h.x(), s[i].h.y());
        e = std::max(e, ode.converged ? (y - ode.state[i]).cwiseAbs().maxCoeff() : kInf);
        ++n;
      }
    }
    add(r, "lobachevsky/generic/oracle", e, 1e-6, n);
  }
  {
    double e = 0;
    long n = 0;
    const ConeBody flat = ConeBody::polyline({{1, 1}, {-1, 1}}, Vec2(1, 0.5).normalized(),
                                             Vec2(-1, 0.5).normalized());
    const HyperTrig evs[] = {HyperTrig(flat, degenerate()),
                             HyperTrig(ConeBody::alpha_hyperbola(2, kPi / 2))};
    for (const HyperTrig& ev : evs) {
      const HorizontalFacet f = horizontal_facet(ev);
      LobachevskyParams p;
      p.kind = LorentzKind::kTimelikeSingularHorizontal;
      p.c3 = 2;
      for (const auto& s : lobachevsky_extremal(ev, p, grid(3, 30))) {
        e = std::max(e, std::abs(std::log(s.q[1]) - std::log(p.c3) - f.c4 * s.t));
        ++n;
      }
    }
    add(r, "lobachevsky/horizontal/log_b", e, 1e-10, n);
  }
  {
    double e = 0;
    long n = 0;
    const std::vector<NamedCone> bodies = {{"omega2", ConeBody::omega2()},
                                           {"alpha3_rot0.2", ConeBody::alpha_hyperbola(3, 0.2)},
                                           {"polyline", test_polyline(), true}};
    for (const NamedCone& c : bodies) {
      const HyperTrig ev = evaluator(c);
      for (int k : {0, 1}) {
        LobachevskyParams p;
        p.kind = LorentzKind::kLightlike;
        p.ray_index = k;
        for (const auto& s : lobachevsky_extremal(ev, p, grid(2, 20))) {
          e = std::max(e, std::abs(c.body.antinorm(s.u)));
          ++n;
        }
      }
    }
    add(r, "lobachevsky/lightlike/antinorm", e, 1e-12, n);
  }
  return r;
}

// Criterion 9: unimodular vertical flows.
Reports unimodular_flows(const VerifyOptions& o) {
  Reports r;
  struct Body {
    const char* name;
    double alpha;
    double far;
  };
  const Body bodies[] = {{"omega2", 2, -3}, {"alpha3", 3, -3}, {"alpha1.5", 1.5, -1}};
  struct Case {
    GroupSpec group;
    int body;
    double E;
    double eta0;
  };
  std::vector<Case> cases;
  for (int b = 0; b < 3; ++b) {
    const HyperTrig ev(ConeBody::alpha_hyperbola(bodies[b].alpha));
    const Vec2 c0 = ev.eval_dual(0);
    const double far = bodies[b].far;
    cases.push_back({GroupSpec::from(GroupName::kH3), b, 0.04, 0});
    cases.push_back({GroupSpec::from(GroupName::kSe2), b, 1, 0});
    cases.push_back({GroupSpec::from(GroupName::kSh2), b, -c0.x() * c0.x() + 0.01, far});
    cases.push_back({GroupSpec::from(GroupName::kSl2APlus), b, -0.5, 0});
    cases.push_back({GroupSpec::from(GroupName::kSl2AMinus), b, -c0.squaredNorm() + 0.01, far});
    cases.push_back({GroupSpec::from(GroupName::kSu2), b, 2, 0});
  }
  const auto ts = grid(5, 50);
  std::vector<double> energy(cases.size(), kInf);
  std::vector<double> eta_err(cases.size(), kInf);
  std::vector<int> turns(cases.size(), 0);
  parallel_for(static_cast<long>(cases.size()), o.exec, [&](long i) {
    const Case& c = cases[static_cast<std::size_t>(i)];
    const HyperTrig ev(ConeBody::alpha_hyperbola(bodies[c.body].alpha));
    const VerticalFlow flow(ev, c.group, c.E, c.eta0, 1, ts.back());
    OdeOptions opts;
    opts.tolerance = 1e-10;
    const auto ode = pmp_ode_oracle(UnimodularProblem{ev.body(), c.group.a, c.group.b},
                                    flow.at(0).h, ts, opts);
    double e = 0;
    double d = 0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const VerticalSample s = flow.at(ts[k]);
      e = std::max(e, std::abs(s.E_residual));
      const double eta_ode = ev.eta_of_direction(Vec2(-ode.state[k](0), ode.state[k](1)));
      d = std::max({d, std::abs(s.eta - eta_ode), (s.h - Vec3(ode.state[k])).cwiseAbs().maxCoeff()});
    }
    energy[static_cast<std::size_t>(i)] = e;
    eta_err[static_cast<std::size_t>(i)] = ode.converged ? d : kInf;
    turns[static_cast<std::size_t>(i)] = flow.turning_points();
  });
  int crossings = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string p = "unimodular/" + std::string(cases[i].group.str()) + "/" + bodies[cases[i].body].name;
    add(r, p + "/energy", energy[i], 1e-8, static_cast<long>(ts.size()));
    add(r, p + "/oracle", eta_err[i], 1e-6, static_cast<long>(ts.size()));
    if (eta_err[i] <= 1e-6) crossings += turns[i];
  }
  add(r, "unimodular/turning_point_crossed", crossings >= 1 ? 0 : 1, 0, crossings);
  return r;
}

// Distance from the direction of u to the nearest boundary ray of C, with the
// rays taken from the descriptor.
double cone_boundary_distance(const ConeBody& body, const Vec2& u) {
  Vec2 l0;
  Vec2 l1;
  if (const auto* a = std::get_if<AlphaHyperbolaDescriptor>(&body.descriptor())) {
    l0 = rotate(Vec2(1, -1).normalized(), a->rotation);
    l1 = rotate(Vec2(1, 1).normalized(), a->rotation);
  } else if (const auto* p = std::get_if<PolylineDescriptor>(&body.descriptor())) {
    l0 = p->ray0.normalized();
    l1 = p->ray1.normalized();
  } else {
    raise(Errc::kInvalidInput, "cone_boundary_distance: unsupported descriptor");
  }
  const Vec2 v = u.normalized();
  return std::min(std::abs(cross(v, l0)) + (v.dot(l0) < 0 ? 2 : 0),
                  std::abs(cross(v, l1)) + (v.dot(l1) < 0 ? 2 : 0));
}

// Criterion 10: timelike/lightlike dichotomy.
Reports extremal_dichotomy(const VerifyOptions& o) {
  Reports r;
  Rng g(o.seed + 10);
  const std::vector<NamedCone> bodies = {{"alpha3_rot-0.3", ConeBody::alpha_hyperbola(3, -0.3)},
                                         {"omega2", ConeBody::omega2()},
                                         {"polyline", test_polyline(), true}};
  for (const NamedCone& c : bodies) {
    std::vector<Vec2> hs;
    for (int k = 0; k < 1000; ++k) hs.emplace_back(g.uniform(-3, 3), g.uniform(-3, 3));
    const std::vector<Label> labels = classify_batch(c.body, hs, -1, o.exec);
    const ConeBody dual = antipolar(c.body);
    const auto samples = boundary_samples(c.body, 1e4, 200000);
    long violations = 0;
    long disagree = 0;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      if (labels[k] != Label::kTimelike) continue;
      const Vec2 w(-hs[k].x(), hs[k].y());
      if (dual.antinorm(w) < 1 - 1e-9) ++violations;
      if (antipolar_antinorm_oracle(samples, w) < 1 - 1e-6) ++disagree;
    }
    add(r, std::string("dichotomy/") + c.name + "/timelike_separating", violations, 0, 1000);
    add(r, std::string("dichotomy/") + c.name + "/timelike_oracle", disagree, 0, 1000);

    // Covectors on the dual rays are lightlike; their controls and those of
    // generated lightlike extremals lie on the boundary of C.
    std::vector<Vec2> rays;
    for (int k = 0; k < 200; ++k) rays.push_back(g.uniform(0.1, 3) * c.body.dual_ray_direction(k % 2));
    const std::vector<Label> ll = classify_batch(c.body, rays, 0, o.exec);
    double dist = 0;
    long unlabeled = 0;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (ll[k] == Label::kRejected || ll[k] == Label::kTimelike) {
        ++unlabeled;
        continue;
      }
      const int idx = ll[k] == Label::kLightlike0 ? 0 : 1;
      dist = std::max(dist, cone_boundary_distance(c.body, c.body.ray_direction(idx)));
    }
    const HyperTrig ev = evaluator(c);
    for (int k : {0, 1}) {
      LobachevskyParams p;
      p.kind = LorentzKind::kLightlike;
      p.ray_index = k;
      for (const auto& s : lobachevsky_extremal(ev, p, grid(1, 10))) {
        dist = std::max(dist, cone_boundary_distance(c.body, s.u));
      }
    }
    add(r, std::string("dichotomy/") + c.name + "/lightlike_labels", unlabeled, 0, 200);
    add(r, std::string("dichotomy/") + c.name + "/lightlike_on_boundary", dist, 1e-9, 222);
  }
  // Switching lightlike extremal on h3.
  const ConeBody w2 = ConeBody::omega2();
  double dist = 0;
  for (const auto& s : lightlike_extremal(w2, GroupSpec::from(GroupName::kH3), 0, {0.8}, grid(2, 40))) {
    dist = std::max(dist, cone_boundary_distance(w2, s.u));
  }
  add(r, "dichotomy/h3_switching/lightlike_on_boundary", dist, 1e-9, 41);
  return r;
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "duality") return Suite::kDuality;
  if (name == "trig") return Suite::kTrig;
  if (name == "heisenberg") return Suite::kHeisenberg;
  if (name == "lobachevsky") return Suite::kLobachevsky;
  if (name == "unimodular") return Suite::kUnimodular;
  if (name == "all") return Suite::kAll;
  raise(Errc::kInvalidInput, "unknown suite '" + std::string(name) + "'");
}

std::string_view suite_name(Suite suite) {
  switch (suite) {
    case Suite::kDuality: return "duality";
    case Suite::kTrig: return "trig";
    case Suite::kHeisenberg: return "heisenberg";
    case Suite::kLobachevsky: return "lobachevsky";
    case Suite::kUnimodular: return "unimodular";
    case Suite::kAll: return "all";
  }
  return "all";
}

std::string_view criterion_title(int k) {
  static constexpr std::string_view kTitles[] = {
      "classical recovery",
      "duality inequalities",
      "bipolar and biantipolar involution",
      "antipolar closed forms",
      "dual properties theorem",
      "derivative theorems",
      "Heisenberg oracle equivalence",
      "Lobachevsky cases",
      "unimodular energy and quadrature",
      "extremal dichotomy",
  };
  if (k < 1 || k > kCriteria) raise(Errc::kInvalidInput, "criterion index out of range");
  return kTitles[k - 1];
}

std::vector<OracleReport> run_criterion(int k, const VerifyOptions& options) {
  switch (k) {
    case 1: return classical_recovery();
    case 2: return duality_inequalities(options);
    case 3: return involutions();
    case 4: return antipolar_closed_forms();
    case 5: return dual_properties();
    case 6: return derivative_theorems(options);
    case 7: return heisenberg_equivalence(options);
    case 8: return lobachevsky_cases();
    case 9: return unimodular_flows(options);
    case 10: return extremal_dichotomy(options);
    default: raise(Errc::kInvalidInput, "criterion index out of range");
  }
}

std::vector<OracleReport> run_suite(Suite suite, const VerifyOptions& options) {
  Reports out;
  auto take = [&](Reports r) { out.insert(out.end(), r.begin(), r.end()); };
  const bool all = suite == Suite::kAll;
  if (all || suite == Suite::kTrig) {
    take(run_criterion(1, options));
    take(run_criterion(6, options));
    take(area_oracles(options));
  }
  if (all || suite == Suite::kDuality) {
    for (int k : {2, 3, 4, 5}) take(run_criterion(k, options));
  }
  if (all || suite == Suite::kHeisenberg) take(run_criterion(7, options));
  if (all || suite == Suite::kLobachevsky) take(run_criterion(8, options));
  if (all || suite == Suite::kUnimodular) {
    take(run_criterion(9, options));
    take(run_criterion(10, options));
  }
  return out;
}

bool all_passed(const std::vector<OracleReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const OracleReport& r) { return r.passed; });
}

std::string report_table(const std::vector<OracleReport>& reports) {
  std::size_t width = 5;
  for (const auto& r : reports) width = std::max(width, r.name.size());
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %12s  %10s  %8s  %s\n", static_cast<int>(width), "check",
                "max_error", "tolerance", "samples", "status");
  out += line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-*s  %12.3e  %10.1e  %8ld  %s\n", static_cast<int>(width),
                  r.name.c_str(), r.max_error, r.tolerance, r.samples, r.passed ? "PASS" : "FAIL");
    out += line;
  }
  return out;
}

Json report_json(const std::vector<OracleReport>& reports) {
  Json checks = Json::array();
  for (const auto& r : reports) {
    checks.push_back({{"name", r.name},
                      {"max_error", std::isfinite(r.max_error) ? Json(r.max_error) : Json(nullptr)},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed},
                      {"samples", r.samples}});
  }
  return {{"passed", all_passed(reports)}, {"checks", checks}};
}

}  // namespace geotrig
