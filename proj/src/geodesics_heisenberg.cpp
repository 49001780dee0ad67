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

#include "geotrig/geodesics_heisenberg.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "geotrig/error.hpp"

namespace geotrig {

namespace {

constexpr double kArgmaxTol = 1e-9;

// Mapped to [-1, 1]: the library's error test mixes scaled and unscaled
// quantities and keeps refining short intervals otherwise.
double integrate(const std::function<double(double)>& g, double a, double b) {
  if (b <= a) return 0;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto f = [&](double s) { return g(mid + half * s); };
  return half * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, -1.0, 1.0, 12, 1e-13);
}

void check_grid(const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i]) || t_grid[i] < 0 || (i > 0 && t_grid[i] < t_grid[i - 1])) {
      raise(Errc::kInvalidInput, "time grid must be finite, nonnegative and increasing");
    }
  }
}

// u3 as a function of time together with its running integral on the grid.
struct U3Path {
  std::function<double(double)> value;
  std::vector<double> integral;
};

U3Path u3_path(const HeisenbergParams& params, const Interval& argmax,
               const std::vector<double>& t_grid) {
  U3Path out;
  if (params.u3_schedule) {
    out.value = params.u3_schedule;
    out.integral.assign(t_grid.size(), 0.0);
    double acc = 0;
    double prev = 0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      acc += integrate(out.value, prev, t_grid[i]);
      prev = t_grid[i];
      out.integral[i] = acc;
      if (!argmax.contains(out.value(t_grid[i]), kArgmaxTol)) {
        raise(Errc::kInvalidFamilyParams, "u3 schedule leaves the argmax interval");
      }
    }
    return out;
  }
  const double v = params.u3.value_or(argmax.mid());
  if (!argmax.contains(v, kArgmaxTol)) {
    raise(Errc::kInvalidFamilyParams, "u3 = " + std::to_string(v) + " is not maximizing");
  }
  out.value = [v](double) { return v; };
  for (double t : t_grid) out.integral.push_back(v * t);
  return out;
}

// theta + k * period closest to the interval.
double reduce_into(double theta, const Interval& iv, double period) {
  return theta - period * std::round((theta - iv.mid()) / period);
}

}  // namespace

Profile Profile::sqrt_cap() { return Profile(); }

Profile Profile::affine_cap(double c) {
  if (!(c > 0) || !std::isfinite(c)) raise(Errc::kInvalidInput, "affine cap needs c > 0");
  Profile p;
  p.kind_ = Kind::kAffineCap;
  p.c_ = c;
  p.m_ = p.M_ = c;
  p.knots_ = {-c, 0, c};
  p.values_ = {0, 1, 0};
  return p;
}

Profile Profile::lp_cap(double exponent) {
  if (!(exponent > 1) || !std::isfinite(exponent)) {
    raise(Errc::kInvalidInput, "lp cap needs 1 < p < inf");
  }
  Profile p;
  p.kind_ = Kind::kLpCap;
  p.p_ = exponent;
  return p;
}

Profile Profile::constant(double value, double m, double M) {
  if (!(value > 0) || !(m > 0) || !(M > 0)) {
    raise(Errc::kInvalidInput, "constant profile needs value, m, M > 0");
  }
  Profile p;
  p.kind_ = Kind::kConst;
  p.m_ = m;
  p.M_ = M;
  p.knots_ = {-m, M};
  p.values_ = {value, value};
  return p;
}

Profile Profile::samples(std::vector<double> v, std::vector<double> f) {
  if (v.size() != f.size() || v.size() < 2) {
    raise(Errc::kInvalidInput, "profile samples need matching v and f arrays");
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) raise(Errc::kInvalidInput, "profile knots must increase");
  }
  if (!(v.front() < 0) || !(v.back() > 0)) {
    raise(Errc::kInvalidInput, "profile knots must straddle 0");
  }
  Profile p;
  p.kind_ = Kind::kSamples;
  p.m_ = -v.front();
  p.M_ = v.back();
  p.knots_ = std::move(v);
  p.values_ = std::move(f);
  return p;
}

double Profile::operator()(double v) const {
  const double span = std::max(m_, M_);
  if (v < -m_ - 1e-12 * span || v > M_ + 1e-12 * span) {
    raise(Errc::kInvalidInput, "profile evaluated outside [-m, M]");
  }
  v = std::clamp(v, -m_, M_);
  switch (kind_) {
    case Kind::kSqrtCap:
      return std::sqrt(std::max(0.0, (1 - v) * (1 + v)));
    case Kind::kLpCap:
      return std::pow(std::max(0.0, 1 - std::pow(std::abs(v), p_)), 1 / p_);
    default: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), v);
      std::size_t j = std::clamp<std::size_t>(it - knots_.begin(), 1, knots_.size() - 1);
      const double s = (v - knots_[j - 1]) / (knots_[j] - knots_[j - 1]);
      return values_[j - 1] + s * (values_[j] - values_[j - 1]);
    }
  }
}

SphericalControlSet::SphericalControlSet(ConvexBody omega, Profile f)
    : f_(std::move(f)), trig_(std::move(omega)) {
  const double lo = -f_.m();
  const double hi = f_.M();
  const int n = 256;
  auto at = [&](int i) { return lo + (hi - lo) * i / n; };
  for (int i = 1; i < n; ++i) {
    if (!(f_(at(i)) > 0)) raise(Errc::kInvalidBody, "profile must be positive inside (-m, M)");
  }
  for (int i = 0; i < n; ++i) {
    for (int step : {1, 7, 64}) {
      if (i + 2 * step > n) continue;
      const double a = f_(at(i));
      const double b = f_(at(i + 2 * step));
      if (f_(at(i + step)) < 0.5 * (a + b) - 1e-12) {
        raise(Errc::kInvalidBody, "profile is not concave");
      }
    }
  }
  if (f_(lo) < 0 || f_(hi) < 0) raise(Errc::kInvalidBody, "profile is negative at an endpoint");
}

double SphericalControlSet::gauge(const Vec3& u) const {
  const Vec2 w(u.x(), u.y());
  const double g = omega().gauge(w);
  if (g == 0 && u.z() == 0) return 0;
  auto inside = [&](double lambda) {
    const double v = u.z() / lambda;
    if (v < -m() || v > M()) return false;
    return g <= lambda * f_(v);
  };
  double hi = 1;
  while (!inside(hi)) hi *= 2;
  double lo = 0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

double SphericalControlSet::support(const Vec3& h) const {
  return heisenberg_H(*this, omega().support(Vec2(h.x(), h.y())), h.z()).H;
}

HamiltonianMax heisenberg_H(const SphericalControlSet& set, double A, double h3) {
  if (!(A >= 0)) raise(Errc::kInvalidInput, "A must be nonnegative");
  const Profile& f = set.f();
  const double m = set.m();
  const double M = set.M();
  if (A == 0) {
    if (h3 > 0) return {h3 * M, {M, M}};
    if (h3 < 0) return {-h3 * m, {-m, -m}};
    return {0, {-m, M}};
  }
  switch (f.kind()) {
    case Profile::Kind::kSqrtCap: {
      const double r = std::hypot(A, h3);
      const double v = h3 / r;
      return {r, {v, v}};
    }
    case Profile::Kind::kLpCap: {
      const double q = f.p() / (f.p() - 1);
      const double H = std::pow(std::pow(A, q) + std::pow(std::abs(h3), q), 1 / q);
      const double v = std::copysign(std::pow(std::abs(h3) / H, q - 1), h3);
      return {H, {v, v}};
    }
    default: {
      const auto& knots = f.knots();
      const auto& values = f.knot_values();
      std::vector<double> g(knots.size());
      for (std::size_t i = 0; i < knots.size(); ++i) g[i] = A * values[i] + h3 * knots[i];
      const double H = *std::max_element(g.begin(), g.end());
      const double tol = 1e-12 * (A * std::abs(H) + std::abs(h3) * std::max(m, M) + A);
      Interval iv{M, -m};
      for (std::size_t i = 0; i < knots.size(); ++i) {
        if (g[i] >= H - tol) {
          iv.lo = std::min(iv.lo, knots[i]);
          iv.hi = std::max(iv.hi, knots[i]);
        }
      }
      return {H, iv};
    }
  }
}

HeisenbergTrajectory heisenberg_extremal(const SphericalControlSet& set,
                                         const HeisenbergParams& params,
                                         const std::vector<double>& t_grid) {
  check_grid(t_grid);
  const double A = params.A;
  const double h3 = params.h3;
  if (!(A >= 0) || !std::isfinite(A) || !std::isfinite(h3)) {
    raise(Errc::kInvalidFamilyParams, "A must be finite and nonnegative");
  }
  if (A == 0 && h3 == 0) raise(Errc::kInvalidFamilyParams, "A and h3 vanish together");
  const CompactTrig& trig = set.trig();
  HeisenbergTrajectory out;
  out.reserve(t_grid.size());

  if (params.family == 1) {
    if (A != 0) raise(Errc::kInvalidFamilyParams, "family 1 requires A = 0");
    const int branch = params.branch == 0 ? (h3 > 0 ? 1 : -1) : params.branch;
    if ((branch != 1 && branch != -1) || branch * h3 < 0) {
      raise(Errc::kInvalidFamilyParams, "family 1 branch must follow the sign of h3");
    }
    const double v = branch > 0 ? set.M() : -set.m();
    for (double t : t_grid) {
      HeisenbergSample s;
      s.t = t;
      s.x = Vec3(0, 0, v * t);
      s.u = Vec3(0, 0, v);
      s.h = Vec3(0, 0, h3);
      s.eta = params.eta0;
      out.push_back(s);
    }
    return out;
  }

  if (params.family == 2) {
    if (A == 0 || h3 != 0) raise(Errc::kInvalidFamilyParams, "family 2 requires A > 0, h3 = 0");
    const Interval corr = trig.inverse_correspondence(params.eta0);
    double theta = corr.mid();
    if (params.theta) {
      theta = reduce_into(*params.theta, corr, trig.period());
      if (!corr.contains(theta, 1e-9)) {
        raise(Errc::kInvalidFamilyParams, "theta is not in the correspondence of eta0");
      }
    }
    const HamiltonianMax fmax = heisenberg_H(set, 1, 0);
    const double W = fmax.H;
    const U3Path path = u3_path(params, fmax.u3_argmax, t_grid);
    const Vec2 w = trig.eval(theta);
    const Vec2 p0 = trig.eval_polar(params.eta0);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const double t = t_grid[i];
      HeisenbergSample s;
      s.t = t;
      s.x = Vec3(W * t * w.x(), W * t * w.y(),
                 path.integral[i] + W * W * w.x() * w.y() * t * t / 2);
      s.u = Vec3(W * w.x(), W * w.y(), path.value(t));
      s.h = Vec3(A * p0.x(), A * p0.y(), 0);
      s.eta = params.eta0;
      out.push_back(s);
    }
    return out;
  }

  if (params.family != 3) raise(Errc::kInvalidFamilyParams, "family must be 1, 2 or 3");
  if (A == 0 || h3 == 0) raise(Errc::kInvalidFamilyParams, "family 3 requires A > 0, h3 != 0");
  const HamiltonianMax hm = heisenberg_H(set, A, h3);
  const U3Path path = u3_path(params, hm.u3_argmax, t_grid);
  const double eta0 = params.eta0;
  const Vec2 p0 = trig.eval_polar(eta0);
  const double r = A / h3;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double eta = eta0 + (hm.H * h3 / (A * A)) * t - (h3 * h3 / (A * A)) * path.integral[i];
    const Vec2 p = trig.eval_polar(eta);
    HeisenbergSample s;
    s.t = t;
    s.eta = eta;
    s.x.x() = r * (p.y() - p0.y());
    s.x.y() = r * (p0.x() - p.x());
    s.x.z() = hm.H / h3 * t - 0.5 * r * r * (eta - eta0) +
              0.5 * r * r * (2 * p.x() * p0.y() - p.x() * p.y() - p0.x() * p0.y());
    const double v = path.value(t);
    const Vec2 w = trig.eval(trig.inverse_correspondence(eta).mid());
    s.u = Vec3(set.f()(v) * w.x(), set.f()(v) * w.y(), v);
    s.h = Vec3(A * p.x(), A * p.y(), h3);
    out.push_back(s);
  }
  return out;
}

BetaSchedule constant_beta(double value) {
  return [value](double) { return value; };
}

BetaSchedule ramp_beta(double T) {
  if (!(T > 0)) raise(Errc::kInvalidInput, "ramp length must be positive");
  return [T](double t) { return t / T; };
}

HeisenbergTrajectory heisenberg_singular_x3(const SphericalControlSet& set, double eta0,
                                            const BetaSchedule& beta,
                                            const std::vector<double>& t_grid,
                                            std::optional<double> u3, double A) {
  check_grid(t_grid);
  if (!(A > 0)) raise(Errc::kInvalidFamilyParams, "singular extremal requires A > 0");
  const CompactTrig& trig = set.trig();
  const Interval corr = trig.inverse_correspondence(eta0);
  if (corr.is_singleton()) {
    raise(Errc::kNotSingularAngle, "the correspondence of eta0 is a single angle");
  }
  const Vec2 w0 = trig.eval(corr.lo);
  const Vec2 w1 = trig.eval(corr.hi);
  const HamiltonianMax fmax = heisenberg_H(set, 1, 0);
  const double W = fmax.H;
  HeisenbergParams p;
  p.u3 = u3;
  const U3Path path = u3_path(p, fmax.u3_argmax, t_grid);

  // (beta t)' by central differences, one-sided at t = 0.
  auto bt = [&](double t) { return beta(t) * t; };
  auto rate = [&](double t) {
    const double d = 1e-6 * std::max(1.0, t);
    if (t < d) return (bt(t + d) - bt(t)) / d;
    return (bt(t + d) - bt(t - d)) / (2 * d);
  };
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double b = beta(t);
    if (!(b >= -1e-12 && b <= 1 + 1e-12)) raise(Errc::kInvalidInput, "beta leaves [0, 1]");
    const double a = rate(t);
    if (!(a >= -1e-6 && a <= 1 + 1e-6)) raise(Errc::kInvalidInput, "(beta t)' leaves [0, 1]");
    if (i > 0 && t_grid[i] > t_grid[i - 1]) {
      const double s = (bt(t) - bt(t_grid[i - 1])) / (t - t_grid[i - 1]);
      if (!(s >= -1e-9 && s <= 1 + 1e-9)) raise(Errc::kInvalidInput, "(beta t)' leaves [0, 1]");
    }
  }

  const Vec2 ph = trig.eval_polar(eta0);
  HeisenbergTrajectory out;
  double I = 0;
  double prev = 0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    I += integrate([&](double s) { return beta(s) * s; }, prev, t);
    prev = t;
    const double b = beta(t);
    const double B = b * t;
    const double C = (1 - b) * t;
    HeisenbergSample s;
    s.t = t;
    s.eta = eta0;
    const Vec2 xy = W * (B * w0 + C * w1);
    s.x.x() = xy.x();
    s.x.y() = xy.y();
    s.x.z() = path.integral[i] +
              W * W *
                  (w0.x() * w0.y() * B * B / 2 + w1.x() * w1.y() * C * C / 2 +
                   w1.x() * w0.y() * (t * t / 2 - C * C / 2 - I) +
                   w0.x() * w1.y() * (I - B * B / 2));
    const double a = std::clamp(rate(t), 0.0, 1.0);
    const Vec2 v = W * (a * w0 + (1 - a) * w1);
    s.u = Vec3(v.x(), v.y(), path.value(t));
    s.h = Vec3(A * ph.x(), A * ph.y(), 0);
    out.push_back(s);
  }
  return out;
}

}  // namespace geotrig
