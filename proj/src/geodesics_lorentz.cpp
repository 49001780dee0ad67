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

#include "geotrig/geodesics_lorentz.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>
#include <utility>

#include "geotrig/error.hpp"

namespace geotrig {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MatrixXcd unit_matrix(int n, int i, int j, cd v = 1) {
  MatrixXcd m = MatrixXcd::Zero(n, n);
  m(i, j) = v;
  return m;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Integrates over [-1, 1] after an affine map: the library compares an
// unscaled error estimate with a scaled tolerance, which never converges on
// short intervals.
double gk(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto g = [&](double s) { return f(mid + half * s); };
  return half * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, -1.0, 1.0, 8, 1e-12);
}

}  // namespace

GroupSpec GroupSpec::from(GroupName name) {
  GroupSpec g;
  g.name = name;
  switch (name) {
    case GroupName::kH3: g.a = 0; g.b = 0; break;
    case GroupName::kSe2: g.a = 1; g.b = 0; break;
    case GroupName::kSh2: g.a = 0; g.b = 1; break;
    case GroupName::kSl2APlus: g.a = 1; g.b = 1; break;
    case GroupName::kSl2AMinus: g.a = -1; g.b = 1; break;
    case GroupName::kSu2: g.a = 1; g.b = -1; break;
    case GroupName::kAffR: g.a = 0; g.b = 0; break;
  }
  return g;
}

GroupSpec GroupSpec::parse(std::string_view name) {
  for (GroupName n : {GroupName::kH3, GroupName::kSe2, GroupName::kSh2, GroupName::kSl2APlus,
                      GroupName::kSl2AMinus, GroupName::kSu2, GroupName::kAffR}) {
    if (from(n).str() == name) return from(n);
  }
  raise(Errc::kInvalidInput, "unknown group '" + std::string(name) + "'");
}

std::string_view GroupSpec::str() const {
  switch (name) {
    case GroupName::kH3: return "h3";
    case GroupName::kSe2: return "se2";
    case GroupName::kSh2: return "sh2";
    case GroupName::kSl2APlus: return "sl2_a_plus";
    case GroupName::kSl2AMinus: return "sl2_a_minus";
    case GroupName::kSu2: return "su2";
    case GroupName::kAffR: return "aff_r";
  }
  return "";
}

int GroupSpec::matrix_size() const {
  switch (name) {
    case GroupName::kH3:
    case GroupName::kSe2:
    case GroupName::kSh2: return 3;
    default: return 2;
  }
}

std::vector<std::string> GroupSpec::chart_names() const {
  switch (name) {
    case GroupName::kH3: return {"x1", "x2", "x3"};
    case GroupName::kSe2: return {"x", "y", "phi"};
    case GroupName::kSh2: return {"x", "y", "psi"};
    case GroupName::kSl2APlus:
    case GroupName::kSl2AMinus: return {"q11", "q12", "q21", "q22"};
    case GroupName::kSu2: return {"re_alpha", "im_alpha", "re_beta", "im_beta"};
    case GroupName::kAffR: return {"a", "b"};
  }
  return {};
}

std::vector<MatrixXcd> GroupSpec::basis() const {
  const cd i(0, 1);
  MatrixXcd H = unit_matrix(2, 0, 0) - unit_matrix(2, 1, 1);
  MatrixXcd S = unit_matrix(2, 0, 1) + unit_matrix(2, 1, 0);
  MatrixXcd A = unit_matrix(2, 0, 1) - unit_matrix(2, 1, 0);
  switch (name) {
    case GroupName::kH3:
      return {unit_matrix(3, 0, 1), unit_matrix(3, 1, 2), unit_matrix(3, 0, 2)};
    case GroupName::kSe2:
      return {unit_matrix(3, 1, 0) - unit_matrix(3, 0, 1), unit_matrix(3, 0, 2),
              unit_matrix(3, 1, 2)};
    case GroupName::kSh2:
      return {unit_matrix(3, 0, 2), -(unit_matrix(3, 0, 1) + unit_matrix(3, 1, 0)),
              unit_matrix(3, 1, 2)};
    case GroupName::kSl2AMinus: return {H / 2.0, S / 2.0, A / 2.0};
    case GroupName::kSl2APlus: return {A / 2.0, H / 2.0, -S / 2.0};
    case GroupName::kSu2: {
      MatrixXcd s1 = S;
      MatrixXcd s2(2, 2);
      s2 << 0, -i, i, 0;
      MatrixXcd s3 = H;
      return {-i * s1 / 2.0, -i * s2 / 2.0, -i * s3 / 2.0};
    }
    case GroupName::kAffR: return {unit_matrix(2, 0, 1), unit_matrix(2, 0, 0)};
  }
  return {};
}

std::vector<double> GroupSpec::chart(const MatrixXcd& q) const {
  switch (name) {
    case GroupName::kH3: return {q(0, 1).real(), q(1, 2).real(), q(0, 2).real()};
    case GroupName::kSe2:
      return {q(0, 2).real(), q(1, 2).real(), std::atan2(q(1, 0).real(), q(0, 0).real())};
    case GroupName::kSh2:
      return {q(0, 2).real(), q(1, 2).real(), -std::atanh(q(0, 1).real() / q(0, 0).real())};
    case GroupName::kSl2APlus:
    case GroupName::kSl2AMinus:
      return {q(0, 0).real(), q(0, 1).real(), q(1, 0).real(), q(1, 1).real()};
    case GroupName::kSu2: return {q(0, 0).real(), q(0, 0).imag(), q(1, 0).real(), q(1, 0).imag()};
    case GroupName::kAffR: return {q(0, 1).real(), q(0, 0).real()};
  }
  return {};
}

MatrixXcd GroupSpec::renormalize(const MatrixXcd& q) const {
  MatrixXcd r = q.real().cast<cd>();
  switch (name) {
    case GroupName::kH3:
      r(0, 0) = r(1, 1) = r(2, 2) = 1;
      r(1, 0) = r(2, 0) = r(2, 1) = 0;
      break;
    case GroupName::kSe2: {
      const double phi = std::atan2((r(1, 0) - r(0, 1)).real(), (r(0, 0) + r(1, 1)).real());
      r(0, 0) = r(1, 1) = std::cos(phi);
      r(1, 0) = std::sin(phi);
      r(0, 1) = -std::sin(phi);
      r(2, 0) = r(2, 1) = 0;
      r(2, 2) = 1;
      break;
    }
    case GroupName::kSh2: {
      const double psi = std::atanh((r(0, 1) + r(1, 0)).real() / (r(0, 0) + r(1, 1)).real());
      r(0, 0) = r(1, 1) = std::cosh(psi);
      r(0, 1) = r(1, 0) = std::sinh(psi);
      r(2, 0) = r(2, 1) = 0;
      r(2, 2) = 1;
      break;
    }
    case GroupName::kSl2APlus:
    case GroupName::kSl2AMinus: {
      const double det = (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
      r /= std::sqrt(det);
      break;
    }
    case GroupName::kSu2: {
      const cd alpha = 0.5 * (q(0, 0) + std::conj(q(1, 1)));
      const cd beta = 0.5 * (q(1, 0) - std::conj(q(0, 1)));
      const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
      r(0, 0) = alpha / n;
      r(0, 1) = -std::conj(beta) / n;
      r(1, 0) = beta / n;
      r(1, 1) = std::conj(alpha) / n;
      break;
    }
    case GroupName::kAffR:
      r(1, 0) = 0;
      r(1, 1) = 1;
      break;
  }
  return r;
}

std::vector<GroupSpec> unimodular_groups() {
  return {GroupSpec::from(GroupName::kH3),        GroupSpec::from(GroupName::kSe2),
          GroupSpec::from(GroupName::kSh2),       GroupSpec::from(GroupName::kSl2APlus),
          GroupSpec::from(GroupName::kSl2AMinus), GroupSpec::from(GroupName::kSu2)};
}

GroupTrajectory horizontal_reconstruct(const GroupSpec& group,
                                       const std::function<Vec2(double)>& u,
                                       const std::vector<double>& t_grid,
                                       const std::vector<double>& breakpoints, double max_step) {
  GroupTrajectory out;
  if (t_grid.empty()) return out;
  const std::vector<MatrixXcd> f = group.basis();
  const int n = group.matrix_size();
  auto A = [&](double t) {
    const Vec2 v = u(t);
    return MatrixXcd(v.x() * f[0] + v.y() * f[1]);
  };
  const double c = std::sqrt(3.0) / 6;
  MatrixXcd q = MatrixXcd::Identity(n, n);
  double t = t_grid.front();
  long steps = 0;
  out.t.push_back(t);
  out.q.push_back(q);
  std::vector<double> bps(breakpoints.begin(), breakpoints.end());
  std::sort(bps.begin(), bps.end());
  // Distance to the nearest breakpoint; steps shrink geometrically towards
  // breakpoints so that controls with power-law kinks keep full order.
  auto gap = [&](double s) {
    auto it = std::lower_bound(bps.begin(), bps.end(), s);
    double d = std::numeric_limits<double>::infinity();
    if (it != bps.end()) d = *it - s;
    if (it != bps.begin()) d = std::min(d, s - *std::prev(it));
    return d;
  };
  constexpr double kGrade = 0.05;
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double end = t_grid[k];
    std::vector<double> stops;
    for (double b : bps) {
      if (b > t && b < end) stops.push_back(b);
    }
    stops.push_back(end);
    for (double stop : stops) {
      while (t < stop) {
        double h = std::min(max_step, std::max(kGrade * gap(t), 1e-10));
        // Avoid a sliver step at the stop.
        if (stop - t <= 1.5 * h) h = stop - t;
        const MatrixXcd A1 = A(t + (0.5 - c) * h);
        const MatrixXcd A2 = A(t + (0.5 + c) * h);
        // q' = q A: the commutator term enters with the sign opposite to the
        // left-multiplied form.
        const MatrixXcd omega = 0.5 * h * (A1 + A2) + (std::sqrt(3.0) / 12) * h * h * (A1 * A2 - A2 * A1);
        q = q * omega.exp();
        if (++steps % 100 == 0) q = group.renormalize(q);
        t = h == stop - t ? stop : t + h;
      }
      t = stop;
    }
    out.t.push_back(end);
    out.q.push_back(q);
  }
  return out;
}

GroupTrajectory horizontal_reconstruct(const GroupSpec& group, const std::vector<Vec2>& u_samples,
                                       const std::vector<double>& t_grid) {
  if (u_samples.size() != t_grid.size()) {
    raise(Errc::kInvalidInput, "control samples and grid differ in length");
  }
  const std::size_t n = t_grid.size();
  auto u = [&](double t) -> Vec2 {
    if (n == 1) return u_samples.front();
    auto it = std::upper_bound(t_grid.begin(), t_grid.end(), t);
    std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - t_grid.begin()), 1, n - 1) - 1;
    // Local cubic through up to four neighbouring samples.
    std::size_t lo = i > 0 ? i - 1 : 0;
    std::size_t hi = std::min(n - 1, lo + 3);
    lo = hi >= 3 ? std::min(lo, hi - 3) : 0;
    Vec2 sum = Vec2::Zero();
    for (std::size_t a = lo; a <= hi; ++a) {
      double w = 1;
      for (std::size_t b = lo; b <= hi; ++b) {
        if (b != a) w *= (t - t_grid[b]) / (t_grid[a] - t_grid[b]);
      }
      sum += w * u_samples[a];
    }
    return sum;
  };
  return horizontal_reconstruct(group, u, t_grid);
}

// Solves d eta / dt = dir sqrt(g(eta)), reflecting at simple roots of g.
// Pieces are parametrized by a variable x in [0, X] with eta(x) monotone and
// time density rho(x) > 0: plain pieces use x = |eta - eta_a|; pieces ending
// or starting at a root r use eta = r -+ dir u^2 so that the density
// 2u / sqrt(g) stays bounded.
class EtaMarcher {
 public:
  enum class Kind { kPlain, kApproach, kLeave, kAsymptotic };
  struct Piece {
    Kind kind = Kind::kPlain;
    double eta_a = 0;  // plain/asymptotic start, approach start
    double root = 0;   // approach/leave/asymptotic root
    double X = 0;
    int dir = 1;
    double t_a = 0;
    double t_b = 0;
    double slope = 0;  // |g'(root)| for approach/leave pieces
  };
  struct State {
    double eta = 0;
    int dir = 0;
  };

  EtaMarcher(std::function<double(double)> g, Interval domain, double eta0, int sign,
             double t_max, double g_scale)
      : g_(std::move(g)), domain_(domain), eta0_(eta0) {
    const double g0 = g_(eta0);
    const double tol = 1e-12 * g_scale;
    if (g0 < -tol) {
      raise(Errc::kEnergyViolation, "radicand " + std::to_string(g0) + " < 0 at the start");
    }
    double eta = eta0;
    int dir = sign;
    double t = 0;
    if (g0 <= tol) {
      const double d = slope(eta0);
      if (std::abs(d) <= 1e-10 * g_scale) {
        frozen_ = true;
        return;
      }
      dir = sign_of(d);
      t = leave(eta0, dir, t);
      eta = eta0 + dir * pieces_.back().X * pieces_.back().X;
    }
    const double step0 = 0.02;
    while (t < t_max) {
      if (pieces_.size() > 2000000) raise(Errc::kQuadratureBlowup, "eta marcher did not reach t_max");
      const double end = dir > 0 ? domain_.hi : domain_.lo;
      double step = std::max(step0, step0 * std::abs(eta));
      bool at_end = false;
      if (std::isfinite(end)) {
        const double room = std::abs(end - eta);
        if (room <= 1e-13 * (1 + std::abs(end))) at_end = true;
        step = std::min(step, 0.5 * room);
      } else if (std::abs(eta) > 1e6) {
        at_end = true;
      }
      double next = eta + dir * step;
      double gn = 0;
      double gm = 0;
      if (!at_end) {
        try {
          gm = g_(eta + 0.5 * dir * step);
          gn = g_(next);
        } catch (const Error&) {
          at_end = true;
        }
        if (!std::isfinite(gn) || !std::isfinite(gm)) at_end = true;
      }
      if (at_end) {
        raise(Errc::kQuadratureBlowup,
              "eta reaches the end of the antipolar domain at t = " + std::to_string(t));
      }
      if (gm > 0 && gn > 0) {
        Piece p{Kind::kPlain, eta, 0, step, dir, t, 0};
        p.t_b = t + integral(p, 0, step);
        pieces_.push_back(p);
        t = p.t_b;
        eta = next;
        continue;
      }
      // A root lies in (eta, first nonpositive sample].
      const double bad = gm <= 0 ? eta + 0.5 * dir * step : next;
      const double r = find_root(eta, bad);
      const double d = slope(r);
      if (std::abs(d) <= 1e-10 * g_scale) {
        Piece p{Kind::kAsymptotic, eta, r, std::abs(r - eta), dir, t, kInf};
        pieces_.push_back(p);
        return;
      }
      Piece p{Kind::kApproach, eta, r, std::sqrt(std::abs(r - eta)), dir, t, 0, std::abs(d)};
      p.t_b = t + integral(p, 0, p.X);
      pieces_.push_back(p);
      t = p.t_b;
      ++turning_points_;
      dir = -dir;
      t = leave(r, dir, t);
      eta = r + dir * pieces_.back().X * pieces_.back().X;
    }
  }

  bool frozen() const { return frozen_; }
  int turning_points() const { return turning_points_; }
  double g(double eta) const { return g_(eta); }

  // Times in [0, t_max] at which eta passes through `level`.
  std::vector<double> crossings(double level, double t_max) const {
    std::vector<double> out;
    if (frozen_) return out;
    for (const Piece& p : pieces_) {
      if (p.t_a > t_max) break;
      const double e0 = eta_of(p, 0);
      const double e1 = eta_of(p, p.X);
      if (std::min(e0, e1) > level || std::max(e0, e1) < level) continue;
      double x = 0;
      switch (p.kind) {
        case Kind::kPlain:
        case Kind::kAsymptotic: x = p.dir * (level - p.eta_a); break;
        case Kind::kApproach: x = p.X - std::sqrt(std::max(0.0, p.dir * (p.root - level))); break;
        case Kind::kLeave: x = std::sqrt(std::max(0.0, p.dir * (level - p.root))); break;
      }
      if (p.kind == Kind::kAsymptotic && x >= p.X) continue;
      const double t = p.t_a + integral(p, 0, std::clamp(x, 0.0, p.X));
      if (t <= t_max && (out.empty() || t - out.back() > 1e-12)) out.push_back(t);
    }
    return out;
  }

  State at(double t) const {
    if (frozen_) return {eta0_, 0};
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](double v, const Piece& p) { return v < p.t_b; });
    if (it == pieces_.end()) --it;
    const Piece& p = *it;
    const double tau = std::max(0.0, t - p.t_a);
    const double x = invert(p, tau);
    return {eta_of(p, x), p.dir};
  }

 private:
  // Five-point derivative, with the stencil kept inside the domain.
  double slope(double eta) const {
    double h = 1e-3 * (1 + std::abs(eta));
    if (std::isfinite(domain_.lo)) h = std::min(h, (eta - domain_.lo) / 3);
    if (std::isfinite(domain_.hi)) h = std::min(h, (domain_.hi - eta) / 3);
    return (g_(eta - 2 * h) - 8 * g_(eta - h) + 8 * g_(eta + h) - g_(eta + 2 * h)) / (12 * h);
  }

  double find_root(double good, double bad) const {
    auto f = [this](double e) { return g_(e); };
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-15 * (1 + std::abs(a)); };
    const double lo = std::min(good, bad);
    const double hi = std::max(good, bad);
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi), tol, iters);
    // The end where g <= 0 is the root side.
    return good < bad ? r.second : r.first;
  }

  // Leave the root r in direction dir; shrinks the first step until the
  // radicand is positive so that a nearby second root is not skipped.
  double leave(double r, int dir, double t) {
    double delta = 0.02;
    for (;; delta *= 0.5) {
      if (delta < 1e-14 * (1 + std::abs(r))) {
        raise(Errc::kStuckAtEquality, "turning points closer than roundoff");
      }
      const double end = dir > 0 ? domain_.hi : domain_.lo;
      if (std::isfinite(end) && std::abs(end - r) <= 2 * delta) continue;
      if (g_(r + dir * delta) > 0 && g_(r + 0.5 * dir * delta) > 0) break;
    }
    Piece p{Kind::kLeave, r, r, std::sqrt(delta), dir, t, 0, std::abs(slope(r))};
    p.t_b = t + integral(p, 0, p.X);
    pieces_.push_back(p);
    return p.t_b;
  }

  double eta_of(const Piece& p, double x) const {
    switch (p.kind) {
      case Kind::kPlain:
      case Kind::kAsymptotic: return p.eta_a + p.dir * x;
      case Kind::kApproach: {
        const double s = p.X - x;
        return p.root - p.dir * s * s;
      }
      case Kind::kLeave: return p.root + p.dir * x * x;
    }
    return p.eta_a;
  }

  double density(const Piece& p, double x) const {
    const double e = eta_of(p, x);
    const double gv = g_(e);
    switch (p.kind) {
      case Kind::kPlain:
      case Kind::kAsymptotic: return 1 / std::sqrt(std::max(gv, 1e-300));
      case Kind::kApproach:
      case Kind::kLeave: {
        const double s = p.kind == Kind::kLeave ? x : p.X - x;
        if (s == 0) return 2 / std::sqrt(p.slope);
        // Guard against roundoff in the root location.
        const double floor = 0.25 * p.slope * s * s;
        return 2 * s / std::sqrt(std::max(gv, floor));
      }
    }
    return 0;
  }

  double integral(const Piece& p, double x0, double x1) const {
    return gk([&](double x) { return density(p, x); }, x0, x1);
  }

  // x in [0, X] with integral_0^x rho = tau: safeguarded Newton with
  // incremental quadrature.
  double invert(const Piece& p, double tau) const {
    double lo = 0;
    double hi = p.X;
    if (p.kind == Kind::kAsymptotic) hi = p.X * (1 - 1e-15);
    double x = std::isfinite(p.t_b) && p.t_b > p.t_a ? p.X * tau / (p.t_b - p.t_a) : 0;
    x = std::clamp(x, lo, hi);
    double F = integral(p, 0, x);
    for (int it = 0; it < 100; ++it) {
      const double r = F - tau;
      if (std::abs(r) <= 1e-13 * (1 + tau)) break;
      if (r > 0) hi = x; else lo = x;
      if (hi - lo <= 1e-15 * p.X) break;
      double nx = x - r / density(p, x);
      if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
      F += integral(p, x, nx);
      const double dx = std::abs(nx - x);
      x = nx;
      if (dx <= 1e-14 * p.X) break;
    }
    return x;
  }

  std::function<double(double)> g_;
  Interval domain_;
  double eta0_ = 0;
  bool frozen_ = false;
  int turning_points_ = 0;
  std::vector<Piece> pieces_;
};

namespace {

double radicand(const HyperTrig& ev, const GroupSpec& group, double E, double eta) {
  const Vec2 cs = ev.eval_dual(eta);
  return E - group.a * cs.y() * cs.y() + group.b * cs.x() * cs.x();
}

// Dual angles where the control eta -> u is not smooth: the frame vertex of a
// non-quadratic alpha hyperbola and the ends of each polyline corner's
// correspondence interval.
std::vector<double> control_kinks(const HyperTrig& ev) {
  const ConeBody& body = ev.body();
  std::vector<Vec2> corners;
  if (body.shape() == ConeBody::Shape::kAlphaHyperbola) {
    if (body.alpha() != 2) corners.push_back(body.from_frame(Vec2(1, 0)));
  } else {
    corners = body.vertices();
  }
  std::vector<double> out;
  for (const Vec2& v : corners) {
    const Interval I = ev.correspondence(ev.theta_of_direction(v));
    out.push_back(I.lo);
    if (!I.is_singleton()) out.push_back(I.hi);
  }
  return out;
}

// Primal point in the correspondence with the dual angle.
Vec2 control_of(const HyperTrig& ev, double eta) {
  return ev.eval(ev.inverse_correspondence(eta).mid());
}

}  // namespace

VerticalFlow::VerticalFlow(const HyperTrig& ev, const GroupSpec& group, double E, double eta0,
                           int sign, double t_max)
    : ev_(std::make_shared<const HyperTrig>(ev)), group_(group), E_(E) {
  if (!group.unimodular()) raise(Errc::kInvalidInput, "vertical flow needs a unimodular group");
  if (sign != 1 && sign != -1) raise(Errc::kInvalidInput, "sign must be +1 or -1");
  const Vec2 cs = ev.eval_dual(eta0);
  const double scale = 1 + std::abs(E) + cs.squaredNorm();
  marcher_ = std::make_shared<const EtaMarcher>(
      [evp = ev_, g = group, E](double eta) { return radicand(*evp, g, E, eta); }, ev.dual_domain(), eta0, sign,
      t_max, scale);
}

bool VerticalFlow::frozen() const { return marcher_->frozen(); }

std::vector<double> VerticalFlow::kink_times(double t_max) const {
  std::vector<double> out;
  for (double eta : control_kinks(*ev_)) {
    for (double t : marcher_->crossings(eta, t_max)) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}
int VerticalFlow::turning_points() const { return marcher_->turning_points(); }

VerticalSample VerticalFlow::at(double t) const {
  const EtaMarcher::State s = marcher_->at(t);
  const Vec2 cs = ev_->eval_dual(s.eta);
  VerticalSample out;
  out.t = t;
  out.eta = s.eta;
  const double g = E_ - group_.a * cs.y() * cs.y() + group_.b * cs.x() * cs.x();
  out.h = Vec3(-cs.x(), cs.y(), s.dir * std::sqrt(std::max(g, 0.0)));
  out.u = control_of(*ev_, s.eta);
  out.E_residual =
      out.h.z() * out.h.z() + group_.a * cs.y() * cs.y() - group_.b * cs.x() * cs.x() - E_;
  return out;
}

std::vector<VerticalSample> vertical_flow(const HyperTrig& ev, const GroupSpec& group, double E,
                                          double eta0, int sign,
                                          const std::vector<double>& t_grid) {
  std::vector<VerticalSample> out;
  if (t_grid.empty()) return out;
  const VerticalFlow flow(ev, group, E, eta0, sign, t_grid.back());
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(flow.at(t));
  return out;
}

std::vector<LorentzSample> unimodular_extremal(const HyperTrig& ev, const GroupSpec& group,
                                               double E, double eta0, int sign,
                                               const std::vector<double>& t_grid) {
  std::vector<LorentzSample> out;
  if (t_grid.empty()) return out;
  const VerticalFlow flow(ev, group, E, eta0, sign, t_grid.back());
  const GroupTrajectory q = horizontal_reconstruct(
      group, [&](double t) { return flow.at(t).u; }, t_grid, flow.kink_times(t_grid.back()));
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const VerticalSample v = flow.at(t_grid[i]);
    out.push_back({v.t, group.chart(q.q[i]), v.u, v.h, v.eta, v.E_residual});
  }
  return out;
}

HorizontalFacet horizontal_facet(const HyperTrig& ev) {
  const ConeBody& dual = ev.antipolar_body();
  for (int s : {1, -1}) {
    const Vec2 w(0, s);
    if (!dual.in_cone(w, -1e-12)) continue;
    HorizontalFacet f;
    f.eta = ev.eta_of_direction(w);
    const Interval th = ev.inverse_correspondence(f.eta);
    const Vec2 p0 = ev.eval(th.lo);
    const Vec2 p1 = ev.eval(th.hi);
    f.c4 = 0.5 * (p0.y() + p1.y());
    f.x_lo = std::min(p0.x(), p1.x());
    f.x_hi = std::max(p0.x(), p1.x());
    return f;
  }
  raise(Errc::kHorizontalFacetAbsent, "no boundary point with a vertical normal");
}

std::vector<LorentzSample> lobachevsky_extremal(const HyperTrig& ev,
                                                const LobachevskyParams& params,
                                                const std::vector<double>& t_grid) {
  std::vector<LorentzSample> out;
  if (t_grid.empty()) return out;
  switch (params.kind) {
    case LorentzKind::kTimelikeGeneric: {
      const Vec2 cs0 = ev.eval_dual(params.eta0);
      if (std::abs(cs0.x()) <= 1e-12) {
        raise(Errc::kInvalidInput, "cosh^ eta0 = 0 belongs to the horizontal case");
      }
      const double c1 = params.c1.value_or(1 / cs0.x());
      const double c2 = params.c2.value_or(-c1 * cs0.y());
      if (c1 == 0) raise(Errc::kInvalidInput, "c1 must be nonzero");
      if (c1 * cs0.x() <= 0) raise(Errc::kInvalidInput, "b(0) = c1 cosh^ eta0 must be positive");
      const HyperTrig* evp = &ev;
      const EtaMarcher m(
          [evp](double eta) {
            const double c = evp->eval_dual(eta).x();
            return c * c;
          },
          ev.dual_domain(), params.eta0, sign_of(cs0.x()), t_grid.back(), 1 + cs0.squaredNorm());
      for (double t : t_grid) {
        const double eta = m.at(t).eta;
        const Vec2 cs = ev.eval_dual(eta);
        LorentzSample s;
        s.t = t;
        s.eta = eta;
        s.q = {c1 * cs.y() + c2, c1 * cs.x()};
        s.u = control_of(ev, eta);
        s.h = Vec3(-cs.x(), cs.y(), 0);
        s.E_residual = s.h.x() * s.u.x() + s.h.y() * s.u.y() + ev.body().antinorm(s.u);
        out.push_back(s);
      }
      return out;
    }
    case LorentzKind::kTimelikeSingularHorizontal: {
      const HorizontalFacet f = horizontal_facet(ev);
      if (!(params.c3 > 0)) raise(Errc::kInvalidInput, "c3 must be positive");
      const double u1 = params.u1.value_or(0.5 * (f.x_lo + f.x_hi));
      if (u1 < f.x_lo - 1e-12 || u1 > f.x_hi + 1e-12) {
        raise(Errc::kInvalidInput, "u1 is off the horizontal facet");
      }
      const Vec2 cs = ev.eval_dual(f.eta);
      const Vec2 u(u1, f.c4);
      for (double t : t_grid) {
        LorentzSample s;
        s.t = t;
        s.eta = f.eta;
        const double e = std::exp(f.c4 * t);
        s.q = {params.a0 + u1 * params.c3 * std::expm1(f.c4 * t) / f.c4, params.c3 * e};
        s.u = u;
        s.h = Vec3(-cs.x(), cs.y(), 0);
        s.E_residual = s.h.x() * u.x() + s.h.y() * u.y() + ev.body().antinorm(u);
        out.push_back(s);
      }
      return out;
    }
    case LorentzKind::kLightlike:
      return lightlike_extremal(ev.body(), GroupSpec::from(GroupName::kAffR), params.ray_index, {},
                                t_grid);
  }
  return out;
}

std::vector<LorentzSample> lightlike_extremal(const ConeBody& body, const GroupSpec& group,
                                              int ray_index,
                                              const std::vector<double>& switch_times,
                                              const std::vector<double>& t_grid, double h3_0) {
  if (ray_index != 0 && ray_index != 1) raise(Errc::kInvalidInput, "ray_index must be 0 or 1");
  std::vector<LorentzSample> out;
  if (t_grid.empty()) return out;
  const std::vector<double>& sw = switch_times;
  for (std::size_t i = 0; i < sw.size(); ++i) {
    if (!(sw[i] > t_grid.front() && sw[i] < t_grid.back()) || (i > 0 && sw[i] <= sw[i - 1])) {
      raise(Errc::kInvalidInput, "switch times must increase inside the time range");
    }
  }
  // Piece p covers [start_p, start_{p+1}) with control on ray (ray_index + p) % 2
  // and h = rho n_k, rho >= 0. Switches happen where rho vanishes.
  std::vector<double> start{t_grid.front()};
  start.insert(start.end(), sw.begin(), sw.end());
  auto ray_of = [&](std::size_t p) { return (ray_index + static_cast<int>(p)) % 2; };
  auto piece_of = [&](double t) {
    auto it = std::upper_bound(start.begin(), start.end(), t);
    return static_cast<std::size_t>(it - start.begin()) - 1;
  };
  struct PieceState {
    double rho = 1;
    double h3 = 0;
  };
  // With h12 = rho n on the dual ray, h12' = h3 perp(u) gives rho' = sigma h3
  // and h3' = -kappa rho; on Aff+(R), h1' = u2 h1 gives rho' = u2 rho.
  struct Coeffs {
    double c = 1;  // rho(tau) = rho0 c + sigma h30 s
    double s = 0;
    double dc = 0;  // h3(tau) = h30 dh + sigma rho0 dc
    double dh = 1;
  };
  auto coeffs = [&](int k, double tau) {
    const Vec2 e = body.ray_direction(k);
    const Vec2 n = body.dual_ray_direction(k);
    Coeffs c;
    if (!group.unimodular()) {
      c.c = std::abs(n.x()) > 1e-15 ? std::exp(e.y() * tau) : 1;
      c.dh = 0;
      return c;
    }
    const double kappa = group.a * n.y() * e.x() + group.b * n.x() * e.y();
    const double w2 = (perp(e).dot(n) > 0 ? 1 : -1) * kappa;
    if (w2 > 1e-15) {
      const double w = std::sqrt(w2);
      return Coeffs{std::cos(w * tau), std::sin(w * tau) / w, -w * std::sin(w * tau), std::cos(w * tau)};
    }
    if (w2 < -1e-15) {
      const double w = std::sqrt(-w2);
      return Coeffs{std::cosh(w * tau), std::sinh(w * tau) / w, w * std::sinh(w * tau), std::cosh(w * tau)};
    }
    return Coeffs{1, tau, 0, 1};
  };
  auto advance = [&](int k, PieceState st, double tau) {
    const double sigma = perp(body.ray_direction(k)).dot(body.dual_ray_direction(k)) > 0 ? 1 : -1;
    const Coeffs c = coeffs(k, tau);
    if (!group.unimodular()) return PieceState{st.rho * c.c, 0};
    return PieceState{st.rho * c.c + sigma * st.h3 * c.s, st.h3 * c.dh + sigma * st.rho * c.dc};
  };

  PieceState cur{1, group.unimodular() ? h3_0 : 0};
  bool consistent = true;
  if (!sw.empty()) {
    // Scale rho0 so that rho reaches 0 at the first switch.
    const int k = ray_of(0);
    const double sigma = perp(body.ray_direction(k)).dot(body.dual_ray_direction(k)) > 0 ? 1 : -1;
    const Coeffs c = coeffs(k, sw[0] - start[0]);
    const double rho0 = group.unimodular() && c.c != 0 ? -sigma * h3_0 * c.s / c.c : -1;
    if (rho0 > 0) cur.rho = rho0; else consistent = false;
  }
  std::vector<PieceState> init{cur};
  double scale = std::abs(cur.rho) + std::abs(cur.h3);
  for (std::size_t p = 1; p < start.size(); ++p) {
    cur = advance(ray_of(p - 1), cur, start[p] - start[p - 1]);
    if (std::abs(cur.rho) > 1e-9 * scale) consistent = false;
    cur.rho = 0;
    init.push_back(cur);
  }
  auto state_at = [&](double t) {
    const std::size_t p = piece_of(t);
    return advance(ray_of(p), init[p], t - start[p]);
  };

  // Sign changes of h3 over the grid and the switch instants.
  std::vector<double> probe = t_grid;
  probe.insert(probe.end(), sw.begin(), sw.end());
  std::sort(probe.begin(), probe.end());
  int changes = 0;
  int last = 0;
  for (double t : probe) {
    const PieceState st = state_at(t);
    const int s = std::abs(st.h3) <= 1e-12 * scale ? 0 : sign_of(st.h3);
    if (s != 0 && last != 0 && s != last) ++changes;
    if (s != 0) last = s;
    if (st.rho < -1e-9 * scale) consistent = false;
  }
  if (static_cast<int>(sw.size()) > changes + 1) {
    raise(Errc::kTooManySwitches, std::to_string(sw.size()) + " switches but h3 changes sign " +
                                      std::to_string(changes) + " times");
  }
  if (!consistent) {
    raise(Errc::kInvalidInput, "switch times do not match the zeros of the covector on the dual ray");
  }

  auto control = [&](double t) -> Vec2 { return body.ray_direction(ray_of(piece_of(t))); };
  std::vector<std::vector<double>> chart;
  if (group.unimodular()) {
    const GroupTrajectory q = horizontal_reconstruct(group, control, t_grid, sw);
    for (const auto& m : q.q) chart.push_back(group.chart(m));
  } else {
    for (double t : t_grid) {
      const Vec2 u = control(t);
      const double g = std::abs(u.y()) > 1e-15 ? std::expm1(u.y() * t) / u.y() : t;
      chart.push_back({u.x() * g, std::exp(u.y() * t)});
    }
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const int k = ray_of(piece_of(t));
    const PieceState st = state_at(t);
    const Vec2 n = body.dual_ray_direction(k);
    LorentzSample s;
    s.t = t;
    s.q = chart[i];
    s.u = body.ray_direction(k);
    s.h = Vec3(st.rho * n.x(), st.rho * n.y(), st.h3);
    s.eta = std::numeric_limits<double>::quiet_NaN();
    s.E_residual = s.h.x() * s.u.x() + s.h.y() * s.u.y();
    out.push_back(s);
  }
  return out;
}

}  // namespace geotrig
