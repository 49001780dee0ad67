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

// Independent reference computations. They use only polylines, the shoelace
// formula, bisection/golden search and fixed-step RK4, never the closed forms
// they are meant to check.

#ifndef GEOTRIG_ORACLES_HPP_
#define GEOTRIG_ORACLES_HPP_

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "geotrig/convex_bodies.hpp"
#include "geotrig/geodesics_heisenberg.hpp"
#include "geotrig/geometry.hpp"

namespace geotrig {

struct OracleReport {
  std::string name;
  double max_error = 0;
  double tolerance = 0;
  bool passed = false;
  long samples = 0;
};

OracleReport make_report(std::string name, double max_error, double tolerance, long samples);

// Doubled area of the contour O -> from -> polyline -> to -> O (shoelace).
// Positive when the polyline runs counterclockwise about the origin.
double sector_area_oracle(const std::vector<Vec2>& boundary_polyline, const Vec2& from_point,
                          const Vec2& to_point);

struct DerivativeEstimate {
  double value = 0;
  double error = 0;
};

// Central difference with one Richardson step: (4 D(h/2) - D(h)) / 3. The
// error estimate is |D_R - D(h/2)|.
DerivativeEstimate finite_difference_oracle(const std::function<double(double)>& map,
                                            double point, double step);

// Dense-sample dual radial functions. `boundary` is a closed (compact) or
// open (cone) sampled boundary.
// 1 / max_x <u, x>: polar radial in direction u.
double polar_radial_oracle(const std::vector<Vec2>& boundary, const Vec2& u);
// min_x <flip(u), x>: antinorm of the antipolar body at unit u.
double antipolar_antinorm_oracle(const std::vector<Vec2>& boundary, const Vec2& u);

// Full PMP systems integrated by RK4 with the pointwise maximizer found by
// brute force. A control "mode" (the active polygon vertex) is frozen inside
// each step and switches are located by bisection, so piecewise-constant
// controls keep fourth order. The step is halved until two successive
// refinements agree to `tolerance` on the grid.
struct OdeOptions {
  double tolerance = 1e-8;
  double initial_step = 1.0 / 64;
  int max_halvings = 10;
  // Resolve nondegenerate maximizer faces by their midpoint instead of
  // raising SingularArcEncountered.
  bool midpoint_ties = false;
};

struct OdeTrajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> state;
  std::vector<Eigen::VectorXd> control;
  double refinement_error = 0;
  double step = 0;
  bool converged = false;
};

// Heisenberg group: state (x1, x2, x3, h1, h2, h3) from the identity.
OdeTrajectory pmp_ode_oracle(const SphericalControlSet& set, const Vec3& h0,
                             const std::vector<double>& t_grid, const OdeOptions& options = {});

// Vertical subsystem of a 3D unimodular group with structure constants
// (a, b), timelike controls (lambda0 = -1): state (h1, h2, h3).
struct UnimodularProblem {
  ConeBody body;
  int a = 0;
  int b = 0;
};
OdeTrajectory pmp_ode_oracle(const UnimodularProblem& problem, const Vec3& h0,
                             const std::vector<double>& t_grid, const OdeOptions& options = {});

// Lobachevsky plane, timelike controls: state (a, b, h1, h2) from (0, 1).
struct LobachevskyProblem {
  ConeBody body;
};
OdeTrajectory pmp_ode_oracle(const LobachevskyProblem& problem, const Vec2& h0,
                             const std::vector<double>& t_grid, const OdeOptions& options = {});

}  // namespace geotrig

#endif  // GEOTRIG_ORACLES_HPP_
