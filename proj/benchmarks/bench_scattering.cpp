// Copyright 2026 The gscat Authors
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

#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "gscat/spectral.hpp"
#include "gscat/timedomain.hpp"

namespace {

using namespace gscat;

ScatteringProblem random_problem(int n, int leads) {
  std::mt19937 rng(n * 100 + leads);
  std::set<std::pair<int, int>> edges;
  for (int i = 2; i <= n; ++i) {
    std::uniform_int_distribution<int> pick(1, i - 1);
    edges.insert({pick(rng), i});
  }
  for (int i = 1; i + 2 <= n; i += 3) edges.insert({i, i + 2});
  std::vector<int> attach;
  for (int i = 1; i <= leads; ++i) attach.push_back(i);
  return ScatteringProblem(
      Graph(n, std::vector<std::pair<int, int>>(edges.begin(), edges.end())),
      LeadConfig(attach));
}

void BM_SolvePoint(benchmark::State& state) {
  const auto p = random_problem(static_cast<int>(state.range(0)), 3);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(3);
  a(0) = 1.0;
  double k = 0.3;
  for (auto _ : state) {
    k = (k < 1.9) ? k + 1e-4 : 0.3;
    benchmark::DoNotOptimize(solve_point(p, k, a));
  }
}
BENCHMARK(BM_SolvePoint)->Arg(6)->Arg(24)->Arg(96);

void BM_SMatrix(benchmark::State& state) {
  const auto p = random_problem(static_cast<int>(state.range(0)), 3);
  double k = 0.3000123;
  for (auto _ : state) {
    k = (k < 1.9) ? k + 1.234567e-4 : 0.3000123;
    try {
      benchmark::DoNotOptimize(s_matrix(p, k));
    } catch (const GraphResonanceError&) {
      // stepped onto an interior resonance; skip the point
    }
  }
}
BENCHMARK(BM_SMatrix)->Arg(6)->Arg(24)->Arg(96);

void BM_Sweep2000(benchmark::State& state) {
  ScatteringProblem p(Graph(3, {{1, 2}, {1, 3}, {2, 3}}), LeadConfig({3, 1}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(p, KGrid::standard(2000), 2));
  }
}
BENCHMARK(BM_Sweep2000);

void BM_Eigenpairs(benchmark::State& state) {
  const auto p = random_problem(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenpairs(p.graph()));
  }
}
BENCHMARK(BM_Eigenpairs)->Arg(16)->Arg(64)->Arg(256);

void BM_LeapfrogStep(benchmark::State& state) {
  ScatteringProblem p(Graph(3, {{1, 2}, {1, 3}, {2, 3}}), LeadConfig({3, 1}));
  const TruncatedAssembly a(p, static_cast<int>(state.range(0)));
  const auto packet =
      PacketSpec::from_bandwidth(1.0, 0.1, state.range(0) / 2);
  WaveState s = initial_packet_state(a, packet);
  for (auto _ : state) {
    advance(a, s, 100, 0.05);
    benchmark::DoNotOptimize(s.u.sum());
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_LeapfrogStep)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
