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
#include <vector>

#include "locksim/types.hpp"

namespace locksim {

// Closed queueing network: one delay center (think time Z) plus one FIFO
// center per lock.
struct QueueingCenter {
  double service = 0.0;  // mean critical-section body cycles
  double visits = 1.0;   // visit ratio per cycle
};

struct QueueingModel {
  double think_time = 0.0;  // Z: mean non-critical cycles per iteration
  std::vector<QueueingCenter> centers;
};

struct MvaPoint {
  uint32_t population = 0;
  double throughput = 0.0;  // X(n), iterations per cycle
  double speedup = 0.0;     // X(n) / X(1)
  std::vector<double> queue_len;      // Q_k(n)
  std::vector<double> residence;      // R_k(n)
};

// Exact mean-value analysis over populations 1..max_population:
//   R_k(n) = s_k * (1 + Q_k(n-1))
//   X(n)   = n / (Z + sum_k v_k * R_k(n))
//   Q_k(n) = X(n) * v_k * R_k(n)
// Throughput is monotone non-decreasing and saturates; it never collapses.
std::vector<MvaPoint> mva_solve(const QueueingModel& model,
                                uint32_t max_population);

// Expected-time mapping from a workload: Z is the probability-weighted mean
// non-critical body time, one center per lock with the probability-weighted
// mean critical body time, visit ratio = summed selection probability.
// Body time of a spec = (misses + 1) * interval + misses * mem_latency.
QueueingModel workload_to_model(const SimConfig& cfg);

}  // namespace locksim
