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


// Serial vs OpenMP throughput of the batch kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "geotrig/kernels.hpp"

namespace geotrig {
namespace {

Exec exec_of(const benchmark::State& state) {
  return state.range(0) ? Exec::kParallel : Exec::kSerial;
}

void BM_TrigTable(benchmark::State& state) {
  const CompactTrig ev(ConvexBody::lp_ball(3));
  std::vector<double> th;
  for (int i = 0; i < 20000; ++i) th.push_back(ev.period() * i / 20000);
  for (auto _ : state) benchmark::DoNotOptimize(trig_table(ev, th, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(th.size()));
}
BENCHMARK(BM_TrigTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HyperDualityGrid(benchmark::State& state) {
  const HyperTrig ev(ConeBody::alpha_hyperbola(3));
  std::vector<double> th;
  for (int i = 0; i < 200; ++i) th.push_back(-1.5 + 3.0 * (i + 0.5) / 200);
  for (auto _ : state) benchmark::DoNotOptimize(hyper_duality_grid(ev, th, th, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 200 * 200);
}
BENCHMARK(BM_HyperDualityGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ClassifyBatch(benchmark::State& state) {
  const ConeBody body = ConeBody::alpha_hyperbola(3, -0.3);
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> d(-3, 3);
  std::vector<Vec2> hs;
  for (int i = 0; i < 100000; ++i) hs.emplace_back(d(rng), d(rng));
  for (auto _ : state) benchmark::DoNotOptimize(classify_batch(body, hs, -1, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(hs.size()));
}
BENCHMARK(BM_ClassifyBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EnergySweep(benchmark::State& state) {
  const HyperTrig ev(ConeBody::omega2());
  const GroupSpec su2 = GroupSpec::from(GroupName::kSu2);
  std::vector<SweepPoint> pts;
  for (int i = 0; i < 64; ++i) pts.push_back({1.1 + 0.05 * i, 0, 1});
  std::vector<double> ts;
  for (int i = 0; i <= 100; ++i) ts.push_back(0.05 * i);
  for (auto _ : state) benchmark::DoNotOptimize(energy_sweep(ev, su2, pts, ts, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(BM_EnergySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace geotrig

BENCHMARK_MAIN();
