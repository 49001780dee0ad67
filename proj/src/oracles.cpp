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

#include "geotrig/oracles.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>

#include "geotrig/error.hpp"

namespace geotrig {

OracleReport make_report(std::string name, double max_error, double tolerance, long samples) {
  OracleReport r;
  r.name = std::move(name);
  r.max_error = max_error;
  r.tolerance = tolerance;
  r.passed = max_error <= tolerance;
  r.samples = samples;
  return r;
}

double sector_area_oracle(const std::vector<Vec2>& boundary_polyline, const Vec2& from_point,
                          const Vec2& to_point) {
  // Closed loop O, from, polyline..., to, O. Edges through O contribute 0.
  double s = 0;
  Vec2 prev = from_point;
  for (const Vec2& p : boundary_polyline) {
    s += cross(prev, p);
    prev = p;
  }
  s += cross(prev, to_point);
  return s;
}

DerivativeEstimate finite_difference_oracle(const std::function<double(double)>& map,
                                            double point, double step) {
  const double d1 = (map(point + step) - map(point - step)) / (2 * step);
  const double h = 0.5 * step;
  const double d2 = (map(point + h) - map(point - h)) / (2 * h);
  const double r = (4 * d2 - d1) / 3;
  return {r, std::abs(r - d2)};
}

double polar_radial_oracle(const std::vector<Vec2>& boundary, const Vec2& u) {
  double m = -std::numeric_limits<double>::infinity();
  for (const Vec2& x : boundary) m = std::max(m, u.dot(x));
  return 1 / m;
}

double antipolar_antinorm_oracle(const std::vector<Vec2>& boundary, const Vec2& u) {
  double m = std::numeric_limits<double>::infinity();
  for (const Vec2& x : boundary) m = std::min(m, flip(u).dot(x));
  return m;
}

namespace {

using Eigen::VectorXd;

struct Control {
  VectorXd u;
  bool tie = false;
};

struct ControlLaw {
  std::function<int(const VectorXd&)> mode;
  std::function<Control(const VectorXd&, int)> control;
  std::function<VectorXd(const VectorXd&, const VectorXd&)> rhs;
};

struct Counters {
  long evals = 0;
  long ties = 0;
};

// Ties are counted only on regular steps; event bisection converges onto the
// switching surface, where they are expected.
VectorXd rk4(const ControlLaw& law, const VectorXd& y, double dt, int mode, Counters* c) {
  auto f = [&](const VectorXd& z) {
    const Control u = law.control(z, mode);
    if (c) {
      ++c->evals;
      if (u.tie) ++c->ties;
    }
    return law.rhs(z, u.u);
  };
  const VectorXd k1 = f(y);
  const VectorXd k2 = f(y + 0.5 * dt * k1);
  const VectorXd k3 = f(y + 0.5 * dt * k2);
  const VectorXd k4 = f(y + dt * k3);
  return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

// RK4 over [0, len] with step doubling: a substep is accepted when one step
// and two half steps agree to 1e-11 per unit time (above roundoff). This resolves
// fractional-power kinks of the control next to a switch.
VectorXd rk4_adaptive(const ControlLaw& law, VectorXd y, double len, int mode, Counters* c) {
  double done = 0;
  double s = len;
  while (len - done > 1e-15 * len) {
    s = std::min(s, len - done);
    const VectorXd big = rk4(law, y, s, mode, c);
    const VectorXd half = rk4(law, rk4(law, y, 0.5 * s, mode, c), 0.5 * s, mode, c);
    const double err = (big - half).lpNorm<Eigen::Infinity>();
    const double floor = 1e-15 * (1 + y.lpNorm<Eigen::Infinity>());
    if (err <= 1e-11 * s + floor || s <= 1e-9 * len) {
      y = half;
      done += s;
      s *= 2;
    } else {
      s *= 0.5;
    }
  }
  return y;
}

// One step of length dt; mode switches inside it are located by bisection
// and the step restarts from the switch.
VectorXd step_with_events(const ControlLaw& law, VectorXd y, double dt, Counters& c) {
  double left = dt;
  for (int events = 0; left > 0 && events < 16; ++events) {
    const int m = law.mode(y);
    const VectorXd y1 = rk4_adaptive(law, y, left, m, &c);
    if (law.mode(y1) == m) return y1;
    double lo = 0;
    double hi = left;
    for (int i = 0; i < 64 && hi - lo > 1e-15 * dt; ++i) {
      const double mid = 0.5 * (lo + hi);
      (law.mode(rk4(law, y, mid, m, nullptr)) == m ? lo : hi) = mid;
    }
    y = rk4_adaptive(law, y, hi, m, nullptr);
    left -= hi;
  }
  if (left > 0) y = rk4_adaptive(law, y, left, law.mode(y), &c);
  return y;
}

std::vector<VectorXd> integrate_pass(const ControlLaw& law, const VectorXd& y0,
                                     const std::vector<double>& grid, double h, Counters& c) {
  std::vector<VectorXd> out;
  out.reserve(grid.size());
  VectorXd y = y0;
  double t = 0;
  for (double tb : grid) {
    const double span = tb - t;
    if (span > 0) {
      const long n = std::max<long>(1, static_cast<long>(std::ceil(span / h - 1e-9)));
      const double dt = span / n;
      for (long k = 0; k < n; ++k) y = step_with_events(law, y, dt, c);
    }
    t = tb;
    out.push_back(y);
  }
  return out;
}

OdeTrajectory run_oracle(const ControlLaw& law, const VectorXd& y0,
                         const std::vector<double>& grid, const OdeOptions& opt) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0) || (i > 0 && grid[i] < grid[i - 1])) {
      raise(Errc::kInvalidInput, "time grid must be nonnegative and increasing");
    }
  }
  Counters c;
  double h = opt.initial_step;
  std::vector<VectorXd> coarse = integrate_pass(law, y0, grid, h, c);
  OdeTrajectory out;
  for (int k = 0; k < opt.max_halvings; ++k) {
    h *= 0.5;
    std::vector<VectorXd> fine = integrate_pass(law, y0, grid, h, c);
    double err = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      err = std::max(err, (fine[i] - coarse[i]).lpNorm<Eigen::Infinity>());
    }
    coarse = std::move(fine);
    out.refinement_error = err;
    if (err <= opt.tolerance) {
      out.converged = true;
      break;
    }
  }
  if (!opt.midpoint_ties && c.ties > c.evals / 100) {
    raise(Errc::kSingularArcEncountered,
          "maximizer is a nondegenerate face on a positive fraction of steps");
  }
  out.step = h;
  out.t = grid;
  out.state = std::move(coarse);
  for (const VectorXd& y : out.state) out.control.push_back(law.control(y, law.mode(y)).u);
  return out;
}

// argmax over [lo, hi] of a concave g by dense sampling. Piecewise-linear
// maps pass their knots in `extra` and are maximized at a sample; smooth maps
// are refined by bisection on the sign of a central-difference slope. Returns
// the midpoint of the tie set when the maximum is attained on a nondegenerate
// interval.
std::pair<double, bool> brute_argmax(const std::function<double(double)>& g, double lo,
                                     double hi, const std::vector<double>& extra) {
  const int n = 64;
  std::vector<double> xs;
  for (int i = 0; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / n);
  xs.insert(xs.end(), extra.begin(), extra.end());
  std::sort(xs.begin(), xs.end());
  std::vector<double> gs(xs.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    gs[i] = g(xs[i]);
    if (gs[i] > gs[best]) best = i;
  }
  const double tol = 1e-12 * (1 + std::abs(gs[best]));
  double tie_lo = xs[best];
  double tie_hi = xs[best];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (gs[i] >= gs[best] - tol) {
      tie_lo = std::min(tie_lo, xs[i]);
      tie_hi = std::max(tie_hi, xs[i]);
    }
  }
  if (tie_hi - tie_lo > 1e-9 * (hi - lo)) return {0.5 * (tie_lo + tie_hi), true};
  if (!extra.empty()) return {xs[best], false};
  double a = xs[best > 0 ? best - 1 : 0];
  double b = xs[std::min(best + 1, xs.size() - 1)];
  const double d = 1e-6 * (hi - lo);
  auto rising = [&](double x) {
    const double l = std::max(lo, x - d);
    const double r = std::min(hi, x + d);
    return g(r) > g(l);
  };
  if (best == 0 && !rising(a)) return {lo, false};
  if (best + 1 == xs.size() && rising(b)) return {hi, false};
  for (int i = 0; i < 80 && b - a > 1e-15 * (hi - lo); ++i) {
    const double mid = 0.5 * (a + b);
    (rising(mid) ? a : b) = mid;
  }
  const double x = 0.5 * (a + b);
  return {g(x) > gs[best] ? x : xs[best], false};
}

// Boundary point of a cone body minimizing <w, x>; mode is the vertex index
// for polylines.
struct ConeArgmin {
  Vec2 point;
  int mode = 0;
  bool tie = false;
};

ConeArgmin cone_argmin(const ConeBody& body, const Vec2& w) {
  if (body.shape() == ConeBody::Shape::kPolyline) {
    const auto& v = body.vertices();
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (w.dot(v[i]) < w.dot(v[best])) best = i;
    }
    bool tie = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i != best && w.dot(v[i]) - w.dot(v[best]) <= 1e-13 * w.norm() * v[i].norm()) tie = true;
    }
    return {v[best], static_cast<int>(best), tie};
  }
  const Vec2 wf = body.to_frame(w);
  // d/dy <wf, (x(y), y)>; increasing in y.
  auto slope = [&](double y) {
    const double x = body.alpha_abscissa(y);
    return wf.x() * std::copysign(std::pow(std::abs(y) / x, body.alpha() - 1), y) + wf.y();
  };
  double L = 1;
  while ((slope(-L) > 0 || slope(L) < 0) && L < 1e12) L *= 2;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      slope, -L, L, boost::math::tools::eps_tolerance<double>(), iters);
  const double y = 0.5 * (r.first + r.second);
  return {body.alpha_point(y), 0, false};
}

}  // namespace

OdeTrajectory pmp_ode_oracle(const SphericalControlSet& set, const Vec3& h0,
                             const std::vector<double>& t_grid, const OdeOptions& options) {
  const ConvexBody& omega = set.omega();
  const bool poly = omega.shape() == ConvexBody::Shape::kPolygon;
  const bool lp = omega.shape() == ConvexBody::Shape::kLp;
  const Profile& f = set.f();
  ControlLaw law;
  // Polygons: the active vertex. lp balls: the quadrant of (h1, h2), where
  // the face map has a fractional-power kink on the axes.
  law.mode = [&](const VectorXd& y) {
    const Vec2 h(y(3), y(4));
    if (lp) return (h.x() >= 0 ? 1 : 0) + (h.y() >= 0 ? 2 : 0);
    if (!poly) return 0;
    const auto& v = omega.vertices();
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (h.dot(v[i]) > h.dot(v[best])) best = i;
    }
    return static_cast<int>(best);
  };
  law.control = [&](const VectorXd& y, int mode) {
    const Vec2 h(y(3), y(4));
    const double h3 = y(5);
    Control out;
    out.u = VectorXd::Zero(3);
    Vec2 w = Vec2::Zero();
    double A = 0;
    if (h.norm() > 0) {
      if (poly) {
        // A vertex tie is a singular arc only when h stays on the switching
        // surface, i.e. h3 = 0; otherwise the frozen vertex is kept.
        w = omega.vertices()[mode];
        const auto& v = omega.vertices();
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (h3 == 0 && static_cast<int>(i) != mode &&
              std::abs(h.dot(v[i]) - h.dot(w)) <= 1e-13 * h.norm() * w.norm()) {
            out.tie = true;
            if (options.midpoint_ties) w = 0.5 * (w + v[i]);
          }
        }
      } else {
        const Face face = omega.face(h);
        out.tie = !face.is_point(1e-12);
        w = out.tie ? face.mid() : face.a;
      }
      A = h.dot(w);
    }
    std::vector<double> knots = f.knots();
    const auto [v, tie] = brute_argmax([&](double s) { return A * f(s) + h3 * s; }, -f.m(),
                                       f.M(), knots);
    out.tie = out.tie || tie;
    const double r = f(v);
    out.u << r * w.x(), r * w.y(), v;
    return out;
  };
  law.rhs = [](const VectorXd& y, const VectorXd& u) {
    VectorXd d(6);
    d << u(0), u(1), u(2) + y(0) * u(1), -y(5) * u(1), y(5) * u(0), 0;
    return d;
  };
  VectorXd y0 = VectorXd::Zero(6);
  y0.tail<3>() = h0;
  return run_oracle(law, y0, t_grid, options);
}

OdeTrajectory pmp_ode_oracle(const UnimodularProblem& problem, const Vec3& h0,
                             const std::vector<double>& t_grid, const OdeOptions& options) {
  const ConeBody& body = problem.body;
  const double a = problem.a;
  const double b = problem.b;
  ControlLaw law;
  law.mode = [&](const VectorXd& y) { return cone_argmin(body, Vec2(-y(0), -y(1))).mode; };
  law.control = [&](const VectorXd& y, int mode) {
    Control out;
    ConeArgmin m = cone_argmin(body, Vec2(-y(0), -y(1)));
    if (body.shape() == ConeBody::Shape::kPolyline) m.point = body.vertices()[mode];
    out.tie = m.tie;
    out.u = m.point;
    return out;
  };
  law.rhs = [a, b](const VectorXd& y, const VectorXd& u) {
    VectorXd d(3);
    d << -y(2) * u(1), y(2) * u(0), -a * y(1) * u(0) - b * y(0) * u(1);
    return d;
  };
  return run_oracle(law, h0, t_grid, options);
}

OdeTrajectory pmp_ode_oracle(const LobachevskyProblem& problem, const Vec2& h0,
                             const std::vector<double>& t_grid, const OdeOptions& options) {
  const ConeBody& body = problem.body;
  ControlLaw law;
  law.mode = [&](const VectorXd& y) { return cone_argmin(body, Vec2(-y(2), -y(3))).mode; };
  law.control = [&](const VectorXd& y, int mode) {
    Control out;
    ConeArgmin m = cone_argmin(body, Vec2(-y(2), -y(3)));
    if (body.shape() == ConeBody::Shape::kPolyline) m.point = body.vertices()[mode];
    out.tie = m.tie;
    out.u = m.point;
    return out;
  };
  law.rhs = [](const VectorXd& y, const VectorXd& u) {
    VectorXd d(4);
    d << y(1) * u(0), y(1) * u(1), u(1) * y(2), -u(0) * y(2);
    return d;
  };
  VectorXd y0(4);
  y0 << 0, 1, h0.x(), h0.y();
  return run_oracle(law, y0, t_grid, options);
}

}  // namespace geotrig
