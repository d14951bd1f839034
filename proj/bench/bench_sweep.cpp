/* Copyright 2026 The locksim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Microbenchmarks for the engine and the sweep drivers. The serial/parallel
// pair shares one spec list so the comparison isolates the driver overhead.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "locksim/config_io.hpp"
#include "locksim/engine.hpp"
#include "locksim/policy.hpp"
#include "locksim/sweep.hpp"
#include "locksim/types.hpp"

namespace {

using namespace locksim;

SimConfig bench_config() {
  static const SimConfig cfg =
      load_config_file(std::string(LOCKSIM_SOURCE_DIR) + "/configs/c1.json");
  return cfg;
}

std::vector<RunSpec> bench_specs() {
  std::vector<RunSpec> specs;
  for (const uint32_t cores : {1u, 4u, 8u, 16u}) {
    for (const uint64_t seed : derive_seeds(42, 2)) {
      RunSpec spec;
      spec.config = bench_config();
      spec.policy = LockPolicy::parse("ticket");
      spec.cores = cores;
      spec.seed = seed;
      spec.max_ticks = 100'000;
      specs.push_back(std::move(spec));
    }
  }
  return specs;
}

void BM_RunSimulation(benchmark::State& state) {
  const SimConfig cfg = bench_config();
  EngineOptions opt;
  opt.cores = static_cast<uint32_t>(state.range(0));
  opt.max_ticks = 100'000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(cfg, opt));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(opt.max_ticks));
}
BENCHMARK(BM_RunSimulation)->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SweepSerial(benchmark::State& state) {
  const std::vector<RunSpec> specs = bench_specs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_serial(specs));
  }
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State& state) {
  const std::vector<RunSpec> specs = bench_specs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_parallel(specs));
  }
}
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
