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

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "geotrig/error.hpp"
#include "geotrig/extremal.hpp"
#include "geotrig/kernels.hpp"

namespace geotrig {
namespace {

using testing::Gen;

bool same_bits(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

bool same_rows(const std::vector<TrigRow>& a, const std::vector<TrigRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x[] = {a[i].theta, a[i].x, a[i].y, a[i].eta_lo, a[i].eta_hi, a[i].dual_x, a[i].dual_y};
    const double y[] = {b[i].theta, b[i].x, b[i].y, b[i].eta_lo, b[i].eta_hi, b[i].dual_x, b[i].dual_y};
    for (int k = 0; k < 7; ++k) {
      if (!same_bits(x[k], y[k])) return false;
    }
  }
  return true;
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (Exec exec : {Exec::kSerial, Exec::kParallel}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(1000, exec, [&](long i) { hits[static_cast<std::size_t>(i)]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(50, exec,
                                 [](long i) {
                                   if (i == 17) raise(Errc::kInvalidInput, "boom");
                                 }),
                    Error);
    parallel_for(0, exec, [](long) { FAIL("called on empty range"); });
  }
  CHECK(kernel_threads() >= 1);
}

TEST_CASE("trig tables: serial and parallel agree and match pointwise evaluation") {
  Gen g(41);
  for (int trial = 0; trial < 5; ++trial) {
    const CompactTrig ev(ConvexBody::polygon(g.convex_polygon(g.integer(3, 9))));
    std::vector<double> th;
    for (int i = 0; i < 300; ++i) th.push_back(g.uniform(0, ev.period()));
    const auto s = trig_table(ev, th, Exec::kSerial);
    const auto p = trig_table(ev, th, Exec::kParallel);
    CHECK(same_rows(s, p));
    for (std::size_t i = 0; i < th.size(); i += 37) {
      const Vec2 x = ev.eval(th[i]);
      const Interval c = ev.correspondence(th[i]);
      const Vec2 w = ev.eval_polar(c.mid());
      CHECK(s[i].x == x.x());
      CHECK(s[i].y == x.y());
      CHECK(s[i].eta_lo == c.lo);
      CHECK(s[i].eta_hi == c.hi);
      CHECK(s[i].dual_x == w.x());
      CHECK(s[i].dual_y == w.y());
      // The table pair is tight for the duality inequality.
      CHECK(x.dot(w) == doctest::Approx(1).epsilon(1e-12));
    }
  }
  const HyperTrig ev(ConeBody::alpha_hyperbola(3));
  std::vector<double> th;
  for (int i = 0; i < 400; ++i) th.push_back(-1.5 + 3.0 * i / 399);
  const auto s = hyper_table(ev, th, Exec::kSerial);
  CHECK(same_rows(s, hyper_table(ev, th, Exec::kParallel)));
  for (const TrigRow& r : s) {
    CHECK(r.x * r.dual_x - r.y * r.dual_y == doctest::Approx(1).epsilon(1e-10));
  }
}

TEST_CASE("duality grids: serial equals parallel, no violations") {
  const CompactTrig ev(ConvexBody::lp_ball(3));
  std::vector<double> th;
  std::vector<double> et;
  for (int i = 0; i < 60; ++i) {
    th.push_back(ev.period() * (i + 0.5) / 60);
    et.push_back(ev.polar_period() * (i + 0.25) / 60);
  }
  const DualityStats s = compact_duality_grid(ev, th, et, Exec::kSerial);
  const DualityStats p = compact_duality_grid(ev, th, et, Exec::kParallel);
  CHECK(s.violation == p.violation);
  CHECK(s.equality_error == p.equality_error);
  CHECK(s.false_equalities == p.false_equalities);
  CHECK(s.samples == 3600);
  CHECK(s.violation <= 1e-12);
  CHECK(s.equality_error <= 1e-8);
  CHECK(s.false_equalities == 0);

  const HyperTrig hv(ConeBody::omega2());
  std::vector<double> ht;
  for (int i = 0; i < 50; ++i) ht.push_back(-2 + 4.0 * i / 49);
  const DualityStats hs = hyper_duality_grid(hv, ht, ht, Exec::kSerial);
  const DualityStats hp = hyper_duality_grid(hv, ht, ht, Exec::kParallel);
  CHECK(hs.violation == hp.violation);
  CHECK(hs.false_equalities == hp.false_equalities);
  CHECK(hs.violation <= 1e-12);
  // On the hyperbola the correspondence is eta = theta: the diagonal pairs.
  CHECK(hs.equality_error <= 1e-8);
  CHECK(hs.false_equalities == 0);
}

TEST_CASE("duality grid detects a false equality claim") {
  // A grid whose theta and eta coincide with correspondence endpoints off the
  // diagonal still has no false equalities: pairs are tight only on the
  // correspondence. For the square, eta = 0 is tight along the whole edge.
  const CompactTrig ev(ConvexBody::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}));
  const DualityStats s = compact_duality_grid(ev, {0.0, 0.5, 0.9}, {0.0}, Exec::kSerial);
  CHECK(s.false_equalities == 0);
  CHECK(s.violation <= 1e-12);
}

TEST_CASE("classify_batch matches classify one by one") {
  Gen g(43);
  const ConeBody body = ConeBody::alpha_hyperbola(3, 0.25);
  std::vector<Vec2> hs;
  for (int i = 0; i < 500; ++i) hs.push_back(g.point_in_disc(3));
  hs.push_back(Vec2::Zero());
  for (int lambda0 : {-1, 0}) {
    const auto s = classify_batch(body, hs, lambda0, Exec::kSerial);
    CHECK(s == classify_batch(body, hs, lambda0, Exec::kParallel));
    for (std::size_t i = 0; i < hs.size(); ++i) {
      Label expect = Label::kRejected;
      try {
        const ExtremalClass c = classify(body, hs[i], lambda0);
        if (c.kind == ExtremalKind::kTimelikeNormal) {
          expect = Label::kTimelike;
        } else {
          expect = *c.ray_index == 0 ? Label::kLightlike0 : Label::kLightlike1;
        }
      } catch (const Error&) {
      }
      CHECK(s[i] == expect);
    }
    // The zero covector is never classified.
    CHECK(s.back() == Label::kRejected);
  }
}

TEST_CASE("energy_sweep: serial equals parallel and reports domain errors") {
  const HyperTrig ev(ConeBody::omega2());
  const GroupSpec su2 = GroupSpec::from(GroupName::kSu2);
  std::vector<SweepPoint> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({1.2 + 0.2 * i, 0.05 * (i % 3), i % 2 ? 1 : -1});
  pts.push_back({0.5, 0, 1});  // radicand 0.5 - 1 < 0 at eta0 = 0
  std::vector<double> ts;
  for (int i = 0; i <= 40; ++i) ts.push_back(0.1 * i);
  const auto s = energy_sweep(ev, su2, pts, ts, Exec::kSerial);
  const auto p = energy_sweep(ev, su2, pts, ts, Exec::kParallel);
  REQUIRE(s.size() == pts.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].ok == p[i].ok);
    CHECK(s[i].error == p[i].error);
    CHECK(s[i].energy_residual == p[i].energy_residual);
    CHECK(s[i].hamiltonian_residual == p[i].hamiltonian_residual);
    CHECK(s[i].turning_points == p[i].turning_points);
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    CHECK(s[i].ok);
    CHECK(s[i].energy_residual <= 1e-8);
    CHECK(s[i].hamiltonian_residual <= 1e-9);
  }
  // su2 with E < 2 oscillates between two simple turning points.
  CHECK(s[0].turning_points >= 1);
  CHECK_FALSE(s.back().ok);
  CHECK(s.back().error == "EnergyViolation");
}

}  // namespace
}  // namespace geotrig
