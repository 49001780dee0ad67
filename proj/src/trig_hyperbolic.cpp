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

#include "geotrig/trig_hyperbolic.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "geotrig/error.hpp"

namespace geotrig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// F(y) = integral_0^y (1 + |s|^alpha)^((1 - alpha) / alpha) ds, the doubled
// contour area along the alpha hyperbola from (1, 0) to ordinate y. With
// w = y^alpha / (1 + y^alpha) it is B(w; 1/alpha, 1 - 2/alpha) / alpha, which
// converges at w = 1 only for alpha > 2. For alpha < 2 it is tabulated by
// Gauss-Kronrod in z = asinh(y).
class AlphaArea {
 public:
  explicit AlphaArea(double alpha) : alpha_(alpha) {
    if (alpha_ > 2) {
      a_ = 1 / alpha_;
      b_ = 1 - 2 / alpha_;
      scale_ = boost::math::beta(a_, b_) / alpha_;
      half_ = scale_;
    } else {
      half_ = kInf;
    }
    if (alpha_ < 2) {
      const double z0 = std::asinh(kSeriesMax);
      z_nodes_.push_back(z0);
      f_nodes_.push_back(series(kSeriesMax));
      for (int k = 1; z0 + k * kDz <= kZmax; ++k) {
        const double z1 = z0 + k * kDz;
        f_nodes_.push_back(f_nodes_.back() + integrate(z_nodes_.back(), z1));
        z_nodes_.push_back(z1);
      }
    }
  }

  double half() const { return half_; }

  double F(double y) const {
    if (y < 0) return -F(-y);
    if (y == 0) return 0;
    if (std::isinf(y)) return half_;
    if (alpha_ == 2) return std::asinh(y);
    if (alpha_ > 2) {
      const double ya = std::pow(y, alpha_);
      const double w = ya / (1 + ya);
      if (w <= 0.5) return scale_ * boost::math::ibeta(a_, b_, w);
      return scale_ * (1 - boost::math::ibeta(b_, a_, 1 / (1 + ya)));
    }
    return F_z(std::asinh(y));
  }

  double F_inv(double theta) const {
    if (theta < 0) return -F_inv(-theta);
    if (theta == 0) return 0;
    if (theta >= half_) return kInf;
    if (alpha_ == 2) return std::sinh(theta);
    if (alpha_ > 2) {
      const double t = theta / scale_;
      if (t <= 0.5) {
        const double w = boost::math::ibeta_inv(a_, b_, t);
        return std::pow(w / (1 - w), 1 / alpha_);
      }
      const double v = boost::math::ibeta_inv(b_, a_, 1 - t);
      return std::pow((1 - v) / v, 1 / alpha_);
    }
    // Bracket in the node table, extending past it geometrically if needed.
    double lo;
    double hi;
    auto it = std::upper_bound(f_nodes_.begin(), f_nodes_.end(), theta);
    if (it == f_nodes_.begin()) {
      lo = 0;
      hi = z_nodes_.front();
    } else if (it != f_nodes_.end()) {
      const std::size_t k = static_cast<std::size_t>(it - f_nodes_.begin());
      lo = z_nodes_[k - 1];
      hi = z_nodes_[k];
    } else {
      lo = z_nodes_.back();
      hi = lo + 1;
      while (F_z(hi) < theta) {
        lo = hi;
        hi *= 2;
      }
    }
    auto fn = [&](double z) {
      return std::make_pair(F_z(z) - theta, integrand(z));
    };
    std::uintmax_t iters = 60;
    const double z = boost::math::tools::newton_raphson_iterate(fn, 0.5 * (lo + hi), lo, hi, 50, iters);
    return std::sinh(z);
  }

 private:
  static constexpr double kDz = 0.25;
  static constexpr double kZmax = 60;
  // Below this ordinate the binomial series converges fast; above it the
  // integrand is analytic in z and a single Gauss-Kronrod panel per node
  // interval is at machine precision.
  static constexpr double kSeriesMax = 0.5;

  // sum_k binom(c, k) y^(alpha k + 1) / (alpha k + 1), c = (1 - alpha) / alpha.
  double series(double y) const {
    const double c = (1 - alpha_) / alpha_;
    const double ya = std::pow(y, alpha_);
    double coef = 1;
    double pw = y;
    double sum = 0;
    for (int k = 0; k < 400; ++k) {
      const double term = coef * pw / (alpha_ * k + 1);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      coef *= (c - k) / (k + 1);
      pw *= ya;
    }
    return sum;
  }

  double g(double s) const {
    if (s <= 1) return std::pow(1 + std::pow(s, alpha_), (1 - alpha_) / alpha_);
    return std::pow(s, 1 - alpha_) * std::pow(1 + std::pow(s, -alpha_), (1 - alpha_) / alpha_);
  }
  double integrand(double z) const { return g(std::sinh(z)) * std::cosh(z); }
  double integrate(double z0, double z1) const {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [this](double z) { return integrand(z); }, z0, z1, 0);
  }
  double F_z(double z) const {
    if (z <= z_nodes_.front()) return series(std::sinh(z));
    std::size_t k = std::min(static_cast<std::size_t>((z - z_nodes_.front()) / kDz),
                             z_nodes_.size() - 1);
    double f = f_nodes_[k];
    double a = z_nodes_[k];
    for (; z - a > kDz; a += kDz) f += integrate(a, a + kDz);
    return f + integrate(a, z);
  }

  double alpha_;
  double a_ = 0;
  double b_ = 0;
  double scale_ = 0;
  double half_ = kInf;
  std::vector<double> z_nodes_;
  std::vector<double> f_nodes_;
};

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

// Angle chart of one cone body with a base point.
class HyperChart {
 public:
  HyperChart(const ConeBody& body, const Vec2& base) : body_(body) {
    if (body.shape() == ConeBody::Shape::kAlphaHyperbola) {
      area_.emplace(body.alpha());
      y0_ = body.to_frame(base).y();
      f0_ = area_->F(y0_);
      return;
    }
    v_ = body.vertices();
    d0_ = body.ray0();
    d1_ = body.ray1();
    c0_ = cross(d0_, v_.front());
    c1_ = cross(v_.back(), d1_);
    open0_ = c0_ > 1e-12 * v_.front().norm();
    open1_ = c1_ > 1e-12 * v_.back().norm();
    raw_.push_back(0);
    for (std::size_t i = 0; i + 1 < v_.size(); ++i) {
      raw_.push_back(raw_.back() + cross(v_[i], v_[i + 1]));
    }
    raw_base_ = raw_of_direction(base);
  }

  bool alpha_shape() const { return area_.has_value(); }

  Interval domain() const {
    if (alpha_shape()) return {-area_->half() - f0_, area_->half() - f0_};
    return {open0_ ? -kInf : raw_.front() - raw_base_, open1_ ? kInf : raw_.back() - raw_base_};
  }

  double theta_of_y(double y) const { return area_->F(y) - f0_; }
  double y_of_theta(double theta) const { return area_->F_inv(theta + f0_); }

  double theta_of_direction(const Vec2& x) const {
    if (alpha_shape()) {
      const Vec2 f = body_.to_frame(x);
      return theta_of_y(f.y() / body_.antinorm(x));
    }
    return raw_of_direction(x) - raw_base_;
  }

  // Closed-domain evaluation; saturated ends return the end vertex.
  Vec2 point(double theta) const {
    if (alpha_shape()) return body_.alpha_point(y_of_theta(theta));
    const double raw = theta + raw_base_;
    if (raw < raw_.front()) {
      if (!open0_) return v_.front();
      return v_.front() + ((raw_.front() - raw) / c0_) * d0_;
    }
    if (raw > raw_.back()) {
      if (!open1_) return v_.back();
      return v_.back() + ((raw - raw_.back()) / c1_) * d1_;
    }
    auto it = std::upper_bound(raw_.begin(), raw_.end(), raw);
    std::size_t i = static_cast<std::size_t>(it - raw_.begin());
    i = std::clamp<std::size_t>(i, 1, v_.size() - 1) - 1;
    if (v_.size() == 1) return v_.front();
    const Vec2& a = v_[i];
    const Vec2& b = v_[i + 1];
    const double s = (raw - raw_[i]) / cross(a, b);
    return a + s * (b - a);
  }

  // Polyline shape: facet indices active at theta (-1: the unbounded side of
  // a saturated end), in boundary order.
  std::pair<int, int> active_facets(double theta) const {
    const int n = static_cast<int>(v_.size());
    const int off = open0_ ? 1 : 0;
    auto facet_of_piece = [&](int piece) {
      if (piece < 0) return open0_ ? 0 : -1;
      if (piece >= n - 1) return open1_ ? off + n - 1 : -1;
      return off + piece;
    };
    const double raw = theta + raw_base_;
    for (int i = 0; i < n; ++i) {
      if (std::abs(raw - raw_[i]) <= 1e-12 * (1 + std::abs(raw_[i]))) {
        return {facet_of_piece(i - 1), facet_of_piece(i)};
      }
    }
    int piece;
    if (raw < raw_.front()) {
      piece = -1;
    } else if (raw > raw_.back()) {
      piece = n - 1;
    } else {
      auto it = std::upper_bound(raw_.begin(), raw_.end(), raw);
      piece = static_cast<int>(it - raw_.begin()) - 1;
    }
    const int f = facet_of_piece(piece);
    return {f, f};
  }

 private:
  double raw_of_direction(const Vec2& x) const {
    const std::size_t n = v_.size();
    if (cross(x, v_.front()) > 0) {
      // Start ray: intersection point P, raw = raw_0 - cross(P, V_0).
      const double t = cross(v_.front(), d0_) / cross(x, d0_);
      return raw_.front() - cross(t * x, v_.front());
    }
    if (cross(v_.back(), x) > 0) {
      const double t = cross(v_.back(), d1_) / cross(x, d1_);
      return raw_.back() + cross(v_.back(), t * x);
    }
    std::size_t i = 0;
    while (i + 2 < n && cross(v_[i + 1], x) >= 0) ++i;
    if (n == 1) return raw_.front();
    const Vec2& a = v_[i];
    const Vec2 e = v_[i + 1] - a;
    const double t = cross(a, e) / cross(x, e);
    return raw_[i] + cross(a, t * x);
  }

  ConeBody body_;
  std::optional<AlphaArea> area_;
  double y0_ = 0;
  double f0_ = 0;
  std::vector<Vec2> v_;
  Vec2 d0_{1, 0};
  Vec2 d1_{0, 1};
  double c0_ = 0;
  double c1_ = 0;
  bool open0_ = false;
  bool open1_ = false;
  std::vector<double> raw_;
  double raw_base_ = 0;
};

namespace {

// Dual angle interval at theta: the supporting covectors of `body` at the
// point of angle theta, mapped by flip into the other body's chart.
Interval correspond(const ConeBody& body, const HyperChart& chart, const HyperChart& other,
                    double theta) {
  if (chart.alpha_shape()) {
    const double y = chart.y_of_theta(theta);
    const double yd = sign_of(y) * std::pow(std::abs(y), body.alpha() - 1);
    const double eta = other.theta_of_y(yd);
    return {eta, eta};
  }
  const auto [lo, hi] = chart.active_facets(theta);
  const auto& w = body.facet_covectors();
  const Interval od = other.domain();
  const double a = lo < 0 ? od.lo : other.theta_of_direction(flip(w[static_cast<std::size_t>(lo)]));
  const double b = hi < 0 ? od.hi : other.theta_of_direction(flip(w[static_cast<std::size_t>(hi)]));
  return {a, b};
}

}  // namespace

HyperTrig::HyperTrig(ConeBody body, HyperOptions options)
    : body_(std::move(body)), dual_body_(antipolar(body_)) {
  const PropertyReport props = check_properties(body_);
  if (!options.allow_degenerate && !(props.star && props.star_star)) {
    raise(Errc::kInvalidBody,
          "body has a boundary ray through the origin or misses an asymptote; "
          "pass allow_degenerate to accept it");
  }
  const bool default_base = !options.base_point.has_value();
  base_ = default_base ? body_.closest_point() : *options.base_point;
  if (base_.norm() == 0 || !body_.in_cone(base_, 1e-12) ||
      boundary_distance(body_, base_) > 1e-9 * std::max(1.0, base_.norm())) {
    raise(Errc::kInvalidInput, "base point is not on the boundary");
  }
  chart_ = std::make_shared<HyperChart>(body_, base_);

  // Supporting covector at the base: orthogonal to the base at the closest
  // point, otherwise the unique (or mid-corner) one.
  Vec2 w;
  if (default_base) {
    w = base_ / base_.squaredNorm();
  } else if (chart_->alpha_shape()) {
    const Vec2 f = body_.to_frame(base_);
    const double a = body_.alpha();
    w = body_.from_frame(Vec2(std::pow(f.x(), a - 1), -sign_of(f.y()) * std::pow(std::abs(f.y()), a - 1)));
  } else {
    const auto [lo, hi] = chart_->active_facets(0);
    if (lo < 0 || hi < 0) raise(Errc::kInvalidInput, "base point at a saturated end");
    const auto& f = body_.facet_covectors();
    w = 0.5 * (f[static_cast<std::size_t>(lo)] + f[static_cast<std::size_t>(hi)]);
  }
  dual_base_ = flip(w);
  dual_chart_ = std::make_shared<HyperChart>(dual_body_, dual_base_);
}

Interval HyperTrig::domain() const { return chart_->domain(); }
Interval HyperTrig::dual_domain() const { return dual_chart_->domain(); }

Vec2 HyperTrig::eval(double theta) const {
  const Interval d = domain();
  if (!(theta > d.lo && theta < d.hi)) raise(Errc::kOutOfDomain, "theta outside the domain");
  return chart_->point(theta);
}

Vec2 HyperTrig::eval_dual(double eta) const {
  const Interval d = dual_domain();
  if (!(eta > d.lo && eta < d.hi)) raise(Errc::kOutOfDomain, "eta outside the dual domain");
  return dual_chart_->point(eta);
}

double HyperTrig::theta_of_direction(const Vec2& x) const { return chart_->theta_of_direction(x); }
double HyperTrig::eta_of_direction(const Vec2& w) const { return dual_chart_->theta_of_direction(w); }

Interval HyperTrig::correspondence(double theta) const {
  const Interval d = domain();
  if (!(theta > d.lo && theta < d.hi)) raise(Errc::kOutOfDomain, "theta outside the domain");
  return correspond(body_, *chart_, *dual_chart_, theta);
}

Interval HyperTrig::inverse_correspondence(double eta) const {
  const Interval d = dual_domain();
  if (!(eta > d.lo && eta < d.hi)) raise(Errc::kOutOfDomain, "eta outside the dual domain");
  return correspond(dual_body_, *dual_chart_, *chart_, eta);
}

Vec2 HyperTrig::derivative(double theta) const {
  const Interval eta = correspondence(theta);
  if (!eta.is_singleton()) raise(Errc::kNonUniqueSupport, "derivative at a corner");
  const Vec2 w = dual_chart_->point(eta.lo);
  return Vec2(w.y(), w.x());
}

std::pair<Vec2, Vec2> HyperTrig::one_sided_derivatives(double theta) const {
  const Interval eta = correspondence(theta);
  if (std::isinf(eta.lo) || std::isinf(eta.hi)) {
    raise(Errc::kNonUniqueSupport, "one-sided derivative at a saturated end");
  }
  const Vec2 a = dual_chart_->point(eta.lo);
  const Vec2 b = dual_chart_->point(eta.hi);
  return {Vec2(a.y(), a.x()), Vec2(b.y(), b.x())};
}

HyperCoords HyperTrig::decompose(const Vec2& point) const {
  if (point.norm() == 0 || !body_.in_cone(point, 1e-14)) {
    raise(Errc::kOutsideCone, "point outside the cone");
  }
  const double r = body_.antinorm(point);
  if (!(r > 0)) raise(Errc::kOutsideCone, "point on a boundary ray of the cone");
  return {r, chart_->theta_of_direction(point)};
}

}  // namespace geotrig
