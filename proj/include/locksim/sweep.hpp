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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locksim/engine.hpp"
#include "locksim/policy.hpp"
#include "locksim/types.hpp"

namespace locksim {

// One simulation to run: a named config at a core count, policy and seed.
struct RunSpec {
  SimConfig config;
  LockPolicy policy;
  uint32_t cores = 1;
  uint64_t seed = 42;
  uint64_t max_ticks = 10'000'000;
  double warmup_fraction = 0.05;
};

// Flattened result row. "error" is empty on success; a failed run keeps its
// row so sweeps stay index-aligned. "kind" is "run" for single runs and
// "mean" for appended per-group aggregate rows.
struct RunRow {
  std::string kind = "run";
  std::string config;
  std::string policy;
  uint32_t cores = 0;
  uint64_t seed = 0;
  uint64_t max_ticks = 0;
  uint64_t warmup_ticks = 0;
  uint64_t iterations = 0;
  double throughput = 0.0;
  double per_core_throughput = 0.0;
  double speedup = 0.0;  // filled by join_speedups against the 1-core row
  double wait_frac_mean = 0.0;
  double wait_frac_max = 0.0;
  uint64_t events[kEventKindCount] = {};
  uint64_t cycles[kEventKindCount] = {};
  double lock_qlen_mean = 0.0;
  uint64_t lock_qlen_max = 0;
  double bank_qlen_mean = 0.0;
  uint64_t bank_qlen_max = 0;
  std::string error;
};

struct SweepResult {
  std::vector<RunRow> rows;  // same order as the input specs
};

// Deterministic seed list: base, then successive SplitMix64 draws.
std::vector<uint64_t> derive_seeds(uint64_t base, std::size_t count);

// Flattens an already-computed result into a row for that run.
RunRow row_from_result(const RunSpec& spec, const SimResult& r);

RunRow run_one(const RunSpec& spec);

// Serial and OpenMP drivers produce identical rows: workers write into
// index-addressed slots, so scheduling order never shows in the output.
SweepResult sweep_serial(const std::vector<RunSpec>& specs);
SweepResult sweep_parallel(const std::vector<RunSpec>& specs);

// Fills RunRow::speedup from the matching (config, policy, seed) 1-core row.
// Rows with no 1-core partner keep speedup 0.
void join_speedups(SweepResult& result);

// Appends per-(config, policy, cores) mean rows over the successful runs,
// seed column set to the participating run count.
void append_mean_rows(SweepResult& result);

// Stable column list written by write_sweep_csv.
std::string sweep_csv_header();

void write_sweep_csv(std::ostream& os, const SweepResult& result);
void write_sweep_json(std::ostream& os, const SweepResult& result);

}  // namespace locksim
