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

// Batch kernels over grids of angles, covectors and energy levels. Each has a
// serial reference path and an OpenMP path that produce identical results in
// the same order.

#ifndef GEOTRIG_KERNELS_HPP_
#define GEOTRIG_KERNELS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "geotrig/convex_bodies.hpp"
#include "geotrig/geodesics_lorentz.hpp"
#include "geotrig/trig_compact.hpp"
#include "geotrig/trig_hyperbolic.hpp"

namespace geotrig {

enum class Exec { kSerial, kParallel };

// body(i) for i in [0, n); the first exception is rethrown after the loop.
void parallel_for(long n, Exec exec, const std::function<void(long)>& body);

// One trig-table row; the dual values are taken at the midpoint of the
// correspondence interval (NaN when it lies outside the dual domain).
struct TrigRow {
  double theta = 0;
  double x = 0;
  double y = 0;
  double eta_lo = 0;
  double eta_hi = 0;
  double dual_x = 0;
  double dual_y = 0;
};

std::vector<TrigRow> trig_table(const CompactTrig& ev, const std::vector<double>& thetas,
                                Exec exec = Exec::kParallel);
std::vector<TrigRow> hyper_table(const HyperTrig& ev, const std::vector<double>& thetas,
                                 Exec exec = Exec::kParallel);

// Duality inequality over a (theta, eta) grid. `violation` is how far the
// pairing crosses 1 on the wrong side, `equality_error` the distance from 1 at
// the correspondence endpoints and midpoint, and `false_equalities` counts grid
// pairs off the correspondence (by more than 1e-4) with the pairing within
// 1e-12 of 1.
struct DualityStats {
  double violation = 0;
  double equality_error = 0;
  long false_equalities = 0;
  long samples = 0;
};

DualityStats compact_duality_grid(const CompactTrig& ev, const std::vector<double>& thetas,
                                  const std::vector<double>& etas, Exec exec = Exec::kParallel);
DualityStats hyper_duality_grid(const HyperTrig& ev, const std::vector<double>& thetas,
                                const std::vector<double>& etas, Exec exec = Exec::kParallel);

enum class Label { kTimelike, kLightlike0, kLightlike1, kRejected };

// classify() on each covector; domain errors become kRejected.
std::vector<Label> classify_batch(const ConeBody& body, const std::vector<Vec2>& covectors,
                                  int lambda0, Exec exec = Exec::kParallel);

struct SweepPoint {
  double E = 0;
  double eta0 = 0;
  int sign = 1;
};

struct SweepResult {
  bool ok = false;
  std::string error;  // error code name when !ok
  double energy_residual = 0;
  double hamiltonian_residual = 0;
  int turning_points = 0;
};

// Vertical flows for many (E, eta0) on one group and body; residuals are the
// maxima over t_grid.
std::vector<SweepResult> energy_sweep(const HyperTrig& ev, const GroupSpec& group,
                                      const std::vector<SweepPoint>& points,
                                      const std::vector<double>& t_grid,
                                      Exec exec = Exec::kParallel);

int kernel_threads();

}  // namespace geotrig

#endif  // GEOTRIG_KERNELS_HPP_
