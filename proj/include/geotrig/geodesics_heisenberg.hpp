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

// Finsler extremals on the Heisenberg group H3 for control sets in
// generalized spherical coordinates U = {(f(v) w, v) : w in Omega,
// v in [-m, M]}.

#ifndef GEOTRIG_GEODESICS_HEISENBERG_HPP_
#define GEOTRIG_GEODESICS_HEISENBERG_HPP_

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "geotrig/convex_bodies.hpp"
#include "geotrig/geometry.hpp"
#include "geotrig/trig_compact.hpp"

namespace geotrig {

using Vec3 = Eigen::Vector3d;

// Concave profile f on [-m, M], positive in the interior.
class Profile {
 public:
  enum class Kind { kSqrtCap, kAffineCap, kLpCap, kConst, kSamples };

  // sqrt(1 - v^2) on [-1, 1].
  static Profile sqrt_cap();
  // 1 - |v| / c on [-c, c].
  static Profile affine_cap(double c);
  // (1 - |v|^p)^(1/p) on [-1, 1]; with an lp cross-section U is the lp ball.
  static Profile lp_cap(double p);
  static Profile constant(double value, double m, double M);
  // Piecewise linear through (v_i, f_i); m = -v_0, M = v_last.
  static Profile samples(std::vector<double> v, std::vector<double> f);

  Kind kind() const { return kind_; }
  double m() const { return m_; }
  double M() const { return M_; }
  double operator()(double v) const;
  // Breakpoints of the piecewise-linear kinds (affine, const, samples).
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& knot_values() const { return values_; }
  double c() const { return c_; }
  double p() const { return p_; }

 private:
  Kind kind_ = Kind::kSqrtCap;
  double m_ = 1;
  double M_ = 1;
  double c_ = 1;
  double p_ = 2;
  std::vector<double> knots_;
  std::vector<double> values_;
};

class SphericalControlSet {
 public:
  // Throws InvalidBody if f fails the sampled concavity or positivity test.
  SphericalControlSet(ConvexBody omega, Profile f);

  const ConvexBody& omega() const { return trig_.body(); }
  const Profile& f() const { return f_; }
  double m() const { return f_.m(); }
  double M() const { return f_.M(); }
  const CompactTrig& trig() const { return trig_; }

  // Minkowski functional of U.
  double gauge(const Vec3& u) const;
  // max over U of <h, u>.
  double support(const Vec3& h) const;

 private:
  Profile f_;
  CompactTrig trig_;
};

struct HamiltonianMax {
  double H = 0;
  Interval u3_argmax;
};

// max over v in [-m, M] of A f(v) + h3 v and its argmax.
HamiltonianMax heisenberg_H(const SphericalControlSet& set, double A, double h3);

struct HeisenbergParams {
  int family = 3;
  double A = 1;
  double h3 = 1;
  double eta0 = 0;
  // Family 1: +1 selects x3 = M t, -1 selects x3 = -m t; 0 follows sign(h3).
  int branch = 0;
  // Constant u3 in the argmax; defaults to the midpoint of the argmax.
  std::optional<double> u3;
  // Time-dependent u3 selection; overrides u3.
  std::function<double(double)> u3_schedule;
  // Family 2: constant theta in the correspondence of eta0; defaults to its
  // midpoint.
  std::optional<double> theta;
};

struct HeisenbergSample {
  double t = 0;
  Vec3 x = Vec3::Zero();
  Vec3 u = Vec3::Zero();
  Vec3 h = Vec3::Zero();
  double eta = 0;
};

using HeisenbergTrajectory = std::vector<HeisenbergSample>;

// Extremal from the identity. Throws InvalidFamilyParams when the first
// integrals do not match the family or a selected u3/theta is not maximizing.
HeisenbergTrajectory heisenberg_extremal(const SphericalControlSet& set,
                                         const HeisenbergParams& params,
                                         const std::vector<double>& t_grid);

using BetaSchedule = std::function<double(double)>;

BetaSchedule constant_beta(double value);
// beta(t) = t / T; admissible for t <= T / 2.
BetaSchedule ramp_beta(double T);

// Singular h3 = 0 extremal along a face [omega_0, omega_1] of Omega:
// (x1, x2)(t) = W t (beta(t) omega_0 + (1 - beta(t)) omega_1). Throws
// NotSingularAngle when the correspondence of eta0 is a single angle and
// InvalidInput for an inadmissible beta.
HeisenbergTrajectory heisenberg_singular_x3(const SphericalControlSet& set, double eta0,
                                            const BetaSchedule& beta,
                                            const std::vector<double>& t_grid,
                                            std::optional<double> u3 = std::nullopt,
                                            double A = 1);

}  // namespace geotrig

#endif  // GEOTRIG_GEODESICS_HEISENBERG_HPP_
