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
#include <functional>

#include "locksim/types.hpp"

namespace locksim {

// Useful throughput of n cores when the mean lock-wait share is wait_share:
// n * (1 - wait_share). wait_share must lie in [0, 1].
double useful_throughput(uint32_t cores, double wait_share);

// Returns the mean lock-wait share for a core count; must be deterministic
// for a fixed count unless the caller injects sampling noise.
using WaitShareOracle = std::function<double(uint32_t cores)>;

struct SearchOutcome {
  uint32_t best = 1;
  uint64_t oracle_calls = 0;
};

// Doubling ascent. Starts at 1 core; a candidate of twice the current count
// is adopted only after two consecutive evaluations above the incumbent, and
// a confirmed decrease keeps the incumbent and stops. `samples` evaluations
// are averaged per comparison (default 1).
SearchOutcome search_optimal(const WaitShareOracle& oracle, uint32_t max_n,
                             uint32_t samples = 1);

// argmax of useful throughput over 1..max_n; smallest count wins ties.
SearchOutcome exhaustive_optimal(const WaitShareOracle& oracle, uint32_t max_n,
                                 uint32_t samples = 1);

}  // namespace locksim
