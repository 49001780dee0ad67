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

#include "geotrig/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "geotrig/error.hpp"
#include "geotrig/extremal.hpp"

namespace geotrig {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, n). Exceptions cannot leave an OpenMP region, so
// the first one is captured and rethrown after the loop.
template <class F>
void for_each_index(long n, Exec exec, F&& body) {
  if (exec == Exec::kSerial) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(geotrig_kernel_error)
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

template <class Acc, class F>
Acc reduce_rows(long n, Exec exec, F&& row, Acc (*merge)(const Acc&, const Acc&)) {
  std::vector<Acc> parts(static_cast<std::size_t>(n));
  for_each_index(n, exec, [&](long i) { parts[static_cast<std::size_t>(i)] = row(i); });
  Acc acc{};
  for (const Acc& p : parts) acc = merge(acc, p);
  return acc;
}

DualityStats merge(const DualityStats& a, const DualityStats& b) {
  return {std::max(a.violation, b.violation), std::max(a.equality_error, b.equality_error),
          a.false_equalities + b.false_equalities, a.samples + b.samples};
}

}  // namespace

void parallel_for(long n, Exec exec, const std::function<void(long)>& body) {
  for_each_index(n, exec, body);
}

int kernel_threads() { return omp_get_max_threads(); }

std::vector<TrigRow> trig_table(const CompactTrig& ev, const std::vector<double>& thetas,
                                Exec exec) {
  std::vector<TrigRow> out(thetas.size());
  for_each_index(static_cast<long>(thetas.size()), exec, [&](long i) {
    TrigRow& r = out[static_cast<std::size_t>(i)];
    r.theta = thetas[static_cast<std::size_t>(i)];
    const Vec2 p = ev.eval(r.theta);
    const Interval eta = ev.correspondence(r.theta);
    const Vec2 q = ev.eval_polar(eta.mid());
    r = {r.theta, p.x(), p.y(), eta.lo, eta.hi, q.x(), q.y()};
  });
  return out;
}

std::vector<TrigRow> hyper_table(const HyperTrig& ev, const std::vector<double>& thetas,
                                 Exec exec) {
  std::vector<TrigRow> out(thetas.size());
  const Interval dd = ev.dual_domain();
  for_each_index(static_cast<long>(thetas.size()), exec, [&](long i) {
    const double t = thetas[static_cast<std::size_t>(i)];
    const Vec2 p = ev.eval(t);
    const Interval eta = ev.correspondence(t);
    Vec2 q(kNaN, kNaN);
    if (eta.mid() > dd.lo && eta.mid() < dd.hi) q = ev.eval_dual(eta.mid());
    out[static_cast<std::size_t>(i)] = {t, p.x(), p.y(), eta.lo, eta.hi, q.x(), q.y()};
  });
  return out;
}

DualityStats compact_duality_grid(const CompactTrig& ev, const std::vector<double>& thetas,
                                  const std::vector<double>& etas, Exec exec) {
  const double P = ev.polar_period();
  return reduce_rows<DualityStats>(
      static_cast<long>(thetas.size()), exec,
      [&](long i) {
        DualityStats s;
        const double t = thetas[static_cast<std::size_t>(i)];
        const Vec2 c = ev.eval(t);
        const Interval eta = ev.correspondence(t);
        for (double f : {0.0, 0.5, 1.0}) {
          const double v = c.dot(ev.eval_polar(eta.lo + f * eta.width()));
          s.equality_error = std::max(s.equality_error, std::abs(v - 1));
        }
        for (double e : etas) {
          const double v = c.dot(ev.eval_polar(e));
          s.violation = std::max(s.violation, v - 1);
          const double lifted = e + P * std::round((eta.mid() - e) / P);
          if (!eta.contains(lifted, 1e-4) && std::abs(v - 1) <= 1e-12) ++s.false_equalities;
          ++s.samples;
        }
        return s;
      },
      &merge);
}

DualityStats hyper_duality_grid(const HyperTrig& ev, const std::vector<double>& thetas,
                                const std::vector<double>& etas, Exec exec) {
  const Interval dd = ev.dual_domain();
  return reduce_rows<DualityStats>(
      static_cast<long>(thetas.size()), exec,
      [&](long i) {
        DualityStats s;
        const double t = thetas[static_cast<std::size_t>(i)];
        const Vec2 x = ev.eval(t);
        const Interval eta = ev.correspondence(t);
        for (double f : {0.0, 0.5, 1.0}) {
          const double e = eta.lo + f * eta.width();
          // Saturated ends of a degenerate dual domain are not evaluable.
          if (!(e > dd.lo && e < dd.hi)) continue;
          s.equality_error = std::max(s.equality_error, std::abs(flip(ev.eval_dual(e)).dot(x) - 1));
        }
        for (double e : etas) {
          const double v = flip(ev.eval_dual(e)).dot(x);
          s.violation = std::max(s.violation, 1 - v);
          if (!eta.contains(e, 1e-4) && std::abs(v - 1) <= 1e-12) ++s.false_equalities;
          ++s.samples;
        }
        return s;
      },
      &merge);
}

std::vector<Label> classify_batch(const ConeBody& body, const std::vector<Vec2>& covectors,
                                  int lambda0, Exec exec) {
  std::vector<Label> out(covectors.size(), Label::kRejected);
  for_each_index(static_cast<long>(covectors.size()), exec, [&](long i) {
    try {
      const ExtremalClass c = classify(body, covectors[static_cast<std::size_t>(i)], lambda0);
      Label l = Label::kTimelike;
      if (c.kind == ExtremalKind::kLightlikeAbnormal) {
        l = c.ray_index.value_or(0) == 0 ? Label::kLightlike0 : Label::kLightlike1;
      }
      out[static_cast<std::size_t>(i)] = l;
    } catch (const Error&) {
      out[static_cast<std::size_t>(i)] = Label::kRejected;
    }
  });
  return out;
}

std::vector<SweepResult> energy_sweep(const HyperTrig& ev, const GroupSpec& group,
                                      const std::vector<SweepPoint>& points,
                                      const std::vector<double>& t_grid, Exec exec) {
  std::vector<SweepResult> out(points.size());
  for_each_index(static_cast<long>(points.size()), exec, [&](long i) {
    const SweepPoint& p = points[static_cast<std::size_t>(i)];
    SweepResult& r = out[static_cast<std::size_t>(i)];
    try {
      const VerticalFlow flow(ev, group, p.E, p.eta0, p.sign, t_grid.back());
      for (double t : t_grid) {
        const VerticalSample s = flow.at(t);
        r.energy_residual = std::max(r.energy_residual, std::abs(s.E_residual));
        const double H = s.h.x() * s.u.x() + s.h.y() * s.u.y() + ev.body().antinorm(s.u);
        r.hamiltonian_residual = std::max(r.hamiltonian_residual, std::abs(H));
      }
      r.turning_points = flow.turning_points();
      r.ok = true;
    } catch (const Error& e) {
      r.ok = false;
      r.error = std::string(errc_name(e.code()));
    }
  });
  return out;
}

}  // namespace geotrig
