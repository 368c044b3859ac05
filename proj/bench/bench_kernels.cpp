// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.

#include <algorithm>
#include <map>

#include <benchmark/benchmark.h>

#include "stin/kernels.hpp"
#include "stin/orchestrator.hpp"

namespace {

using namespace stin;

const Scenario& bench_scenario(int vehicles) {
  static std::map<int, Scenario> cache;
  auto it = cache.find(vehicles);
  if (it == cache.end()) {
    ScenarioConfig c;
    c.vehicles = vehicles;
    c.infra.num_clusters = (vehicles + 4) / 5;
    c.infra.num_subchannels = std::max(6, c.infra.num_clusters);
    c.options.relay_rate = 1e8;
    it = cache.emplace(vehicles, generate_scenario(c)).first;
  }
  return it->second;
}

std::vector<int> round_robin_owner(const Scenario& s) {
  std::vector<int> owner(s.num_subchannels());
  for (int f = 0; f < s.num_subchannels(); ++f) owner[f] = f % s.num_clusters();
  return owner;
}

void BM_RelaySerial(benchmark::State& st) {
  InfrastructureParams infra;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::relay_rate(infra, 7, st.range(0)));
}
void BM_RelayOmp(benchmark::State& st) {
  InfrastructureParams infra;
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::relay_rate(infra, 7, st.range(0)));
}

void BM_ExactNomaSerial(benchmark::State& st) {
  const auto& s = bench_scenario(st.range(0));
  const auto owner = round_robin_owner(s);
  const std::vector<double> power(s.num_vehicles(), s.infra().p_max);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::exact_noma_rates(s, owner, power));
}
void BM_ExactNomaOmp(benchmark::State& st) {
  const auto& s = bench_scenario(st.range(0));
  const auto owner = round_robin_owner(s);
  const std::vector<double> power(s.num_vehicles(), s.infra().p_max);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::exact_noma_rates(s, owner, power));
}

void BM_PathlossSerial(benchmark::State& st) {
  const auto& s = bench_scenario(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::mean_pathloss(s));
}
void BM_PathlossOmp(benchmark::State& st) {
  const auto& s = bench_scenario(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::mean_pathloss(s));
}

ExperimentSpec bench_sweep() {
  ExperimentSpec spec;
  spec.sweep = SweepVariable::Vehicles;
  spec.values = {10, 20};
  spec.schemes = {Scheme::Jtora};
  spec.seeds = {1, 2, 3, 4};
  spec.base.options.relay_rate = 1e8;
  return spec;
}
void BM_SweepSerial(benchmark::State& st) {
  const auto spec = bench_sweep();
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment(spec, Parallelism::Serial));
}
void BM_SweepOmp(benchmark::State& st) {
  const auto spec = bench_sweep();
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment(spec, Parallelism::OpenMP));
}

}  // namespace

BENCHMARK(BM_RelaySerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RelayOmp)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactNomaSerial)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactNomaOmp)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PathlossSerial)->Arg(20)->Arg(60)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PathlossOmp)->Arg(20)->Arg(60)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
