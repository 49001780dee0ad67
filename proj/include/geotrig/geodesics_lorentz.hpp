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

// Lorentz extremals: the Lobachevsky plane Aff+(R) and the vertical
// subsystem of sub-Lorentzian problems on 3D unimodular groups, together with
// the horizontal reconstruction q' = q u on matrix charts.

#ifndef GEOTRIG_GEODESICS_LORENTZ_HPP_
#define GEOTRIG_GEODESICS_LORENTZ_HPP_

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geotrig/convex_bodies.hpp"
#include "geotrig/geometry.hpp"
#include "geotrig/trig_hyperbolic.hpp"

namespace geotrig {

using Vec3 = Eigen::Vector3d;

enum class GroupName { kH3, kSe2, kSh2, kSl2APlus, kSl2AMinus, kSu2, kAffR };

// Structure constants [f1, f2] = f3, [f3, f1] = a f2, [f3, f2] = b f1 for the
// unimodular groups; aff_r has [f1, f2] = -f1 and no f3.
struct GroupSpec {
  GroupName name = GroupName::kH3;
  int a = 0;
  int b = 0;

  static GroupSpec from(GroupName name);
  // Throws InvalidInput for unknown names.
  static GroupSpec parse(std::string_view name);
  std::string_view str() const;
  bool unimodular() const { return name != GroupName::kAffR; }
  int matrix_size() const;
  std::vector<std::string> chart_names() const;
  // Matrix representatives of f1, f2 (and f3 for unimodular groups).
  std::vector<Eigen::MatrixXcd> basis() const;
  // Chart coordinates of a group element.
  std::vector<double> chart(const Eigen::MatrixXcd& q) const;
  // Projection back onto the group after roundoff drift.
  Eigen::MatrixXcd renormalize(const Eigen::MatrixXcd& q) const;
};

std::vector<GroupSpec> unimodular_groups();

struct GroupTrajectory {
  std::vector<double> t;
  std::vector<Eigen::MatrixXcd> q;
};

// q' = q (u1 f1 + u2 f2), q(0) = identity, by the fourth-order Magnus
// integrator with substeps <= max_step; `breakpoints` are extra substep
// boundaries (control kinks or jumps), approached with geometrically graded
// substeps.
GroupTrajectory horizontal_reconstruct(const GroupSpec& group,
                                       const std::function<Vec2(double)>& u,
                                       const std::vector<double>& t_grid,
                                       const std::vector<double>& breakpoints = {},
                                       double max_step = 5e-3);
// Controls sampled on t_grid, interpolated by local cubics.
GroupTrajectory horizontal_reconstruct(const GroupSpec& group, const std::vector<Vec2>& u_samples,
                                       const std::vector<double>& t_grid);

struct VerticalSample {
  double t = 0;
  double eta = 0;
  Vec3 h = Vec3::Zero();
  Vec2 u = Vec2::Zero();
  // h3^2 + a sinh^2 - b cosh^2 - E.
  double E_residual = 0;
};

class EtaMarcher;

// Timelike solution of the vertical subsystem: h = (-cosh^ eta, sinh^ eta,
// h3) with eta' = h3 and h3^2 = E - a sinh^2 eta + b cosh^2 eta. eta(t)
// inverts the quadrature t = int d eta / sqrt(...); the sign of h3 flips at
// simple turning points and eta freezes when the start is a double root.
class VerticalFlow {
 public:
  // Throws EnergyViolation when the radicand is negative at eta0 and
  // QuadratureBlowup when eta leaves the antipolar domain before t_max.
  VerticalFlow(const HyperTrig& ev, const GroupSpec& group, double E, double eta0, int sign,
               double t_max);

  VerticalSample at(double t) const;
  bool frozen() const;
  int turning_points() const;
  // Times up to t_max where the control u(t) is not smooth.
  std::vector<double> kink_times(double t_max) const;
  double E() const { return E_; }

 private:
  std::shared_ptr<const HyperTrig> ev_;
  GroupSpec group_;
  double E_ = 0;
  std::shared_ptr<const EtaMarcher> marcher_;
};

std::vector<VerticalSample> vertical_flow(const HyperTrig& ev, const GroupSpec& group, double E,
                                          double eta0, int sign, const std::vector<double>& t_grid);

enum class LorentzKind { kTimelikeGeneric, kTimelikeSingularHorizontal, kLightlike };

struct LobachevskyParams {
  LorentzKind kind = LorentzKind::kTimelikeGeneric;
  // Generic case: initial dual angle; c1, c2 default to the identity start
  // c1 = 1 / cosh^ eta0, c2 = -c1 sinh^ eta0.
  double eta0 = 0;
  std::optional<double> c1;
  std::optional<double> c2;
  // Horizontal case: b = c3 exp(c4 t); u1 on the facet defaults to its
  // midpoint; a(0) = a0.
  double c3 = 1;
  double a0 = 0;
  std::optional<double> u1;
  // Lightlike case.
  int ray_index = 0;
};

struct LorentzSample {
  double t = 0;
  std::vector<double> q;  // chart coordinates
  Vec2 u = Vec2::Zero();
  Vec3 h = Vec3::Zero();  // h3 = 0 on aff_r
  double eta = 0;         // NaN on lightlike samples
  double E_residual = 0;
};

// E_residual is the Hamiltonian residual <h, u> + nu(u) for timelike and
// <h, u> for lightlike samples.
std::vector<LorentzSample> lobachevsky_extremal(const HyperTrig& ev, const LobachevskyParams& params,
                                                const std::vector<double>& t_grid);

// Height c4 of the horizontal support facet and the dual angle with
// cosh^ eta = 0. Throws HorizontalFacetAbsent.
struct HorizontalFacet {
  double eta = 0;
  double c4 = 0;
  double x_lo = 0;
  double x_hi = 0;
};
HorizontalFacet horizontal_facet(const HyperTrig& ev);

// Lightlike extremal: unit control on the boundary ray l_k of the cone,
// switching to the other ray at each switch time; h = rho n_k on the dual
// ray with <h, u> = 0 and h3(0) = h3_0. Switches happen where h12 passes
// through the origin: the first switch fixes rho(0), later ones must hit
// zeros of rho (InvalidInput otherwise). Throws TooManySwitches when the
// switches exceed the sign changes of h3 plus one. On aff_r, h3 is 0 and
// rho(0) = 1.
std::vector<LorentzSample> lightlike_extremal(const ConeBody& body, const GroupSpec& group,
                                              int ray_index,
                                              const std::vector<double>& switch_times,
                                              const std::vector<double>& t_grid, double h3_0 = 1);

// Vertical flow plus horizontal reconstruction on the group chart.
std::vector<LorentzSample> unimodular_extremal(const HyperTrig& ev, const GroupSpec& group,
                                               double E, double eta0, int sign,
                                               const std::vector<double>& t_grid);

}  // namespace geotrig

#endif  // GEOTRIG_GEODESICS_LORENTZ_HPP_
