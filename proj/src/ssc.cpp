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

#include "locksim/ssc.hpp"

#include <algorithm>

namespace locksim {

double useful_throughput(uint32_t cores, double wait_share) {
  if (wait_share < 0.0 || wait_share > 1.0) {
    throw ConfigError("wait share must lie in [0, 1]");
  }
  return static_cast<double>(cores) * (1.0 - wait_share);
}

namespace {

// Mean useful throughput at a core count over `samples` oracle evaluations.
double evaluate(const WaitShareOracle& oracle, uint32_t n, uint32_t samples,
                uint64_t& calls) {
  double sum = 0.0;
  for (uint32_t i = 0; i < samples; ++i) {
    sum += useful_throughput(n, oracle(n));
    ++calls;
  }
  return sum / static_cast<double>(samples);
}

}  // namespace

SearchOutcome search_optimal(const WaitShareOracle& oracle, uint32_t max_n,
                             uint32_t samples) {
  if (max_n == 0) throw ConfigError("search range must be nonempty");
  if (samples == 0) throw ConfigError("samples must be positive");
  SearchOutcome out;
  out.best = 1;
  double best_value = evaluate(oracle, 1, samples, out.oracle_calls);
  // Double the candidate; adopt it only after two consecutive evaluations
  // above the incumbent, and stop on a confirmed non-improvement.
  for (uint32_t cand = 2; cand <= max_n; cand *= 2) {
    const double first = evaluate(oracle, cand, samples, out.oracle_calls);
    const double second = evaluate(oracle, cand, samples, out.oracle_calls);
    if (first > best_value && second > best_value) {
      out.best = cand;
      best_value = std::max(first, second);
    } else {
      break;
    }
    if (cand > max_n / 2) break;  // next doubling would overflow the range
  }
  return out;
}

SearchOutcome exhaustive_optimal(const WaitShareOracle& oracle, uint32_t max_n,
                                 uint32_t samples) {
  if (max_n == 0) throw ConfigError("search range must be nonempty");
  if (samples == 0) throw ConfigError("samples must be positive");
  SearchOutcome out;
  out.best = 1;
  double best_value = evaluate(oracle, 1, samples, out.oracle_calls);
  for (uint32_t n = 2; n <= max_n; ++n) {
    const double value = evaluate(oracle, n, samples, out.oracle_calls);
    if (value > best_value) {
      out.best = n;
      best_value = value;
    }
  }
  return out;
}

}  // namespace locksim
