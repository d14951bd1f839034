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
#include "locksim/types.hpp"

namespace locksim {

// Per-function time spent inside one unit of work (one completed iteration).
struct ProfileEntry {
  std::string func;
  double time_per_cycle = 0.0;
};

struct Profile {
  uint32_t core_count = 1;
  double throughput = 0.0;  // optional; 0 when unknown
  std::vector<ProfileEntry> entries;
};

// CSV: "func,time_per_cycle" rows; optional "# cores=N throughput=X" comment.
Profile read_profile_csv(std::istream& is);
Profile read_profile_file(const std::string& path);
void write_profile_csv(std::ostream& os, const Profile& p);

// Core-seconds consumed per unit of work at population n.
double computation_cycle(uint32_t cores, double throughput);

// A simulation result viewed as a profile: per-event-kind cycles divided by
// completed iterations.
Profile profile_from_result(const SimResult& r);

struct ScalabilityEntry {
  std::string func;
  double single_time = 0.0;
  double multi_time = 0.0;
  double value = 0.0;   // multi_time - single_time
  double weight = 0.0;  // value / sum of positive values; 0 when value <= 0
};

struct ScalabilityReport {
  std::vector<ScalabilityEntry> entries;  // sorted by value descending
  double positive_total = 0.0;
};

// Merges the two profiles by function name (missing side contributes 0) and
// ranks by value. Ties break on function name for a stable order.
ScalabilityReport scalability_values(const Profile& single, const Profile& multi);

// Sum of the top-k weights, in [0, 1].
double top_coverage(const ScalabilityReport& report, std::size_t k);

void write_report_csv(std::ostream& os, const ScalabilityReport& report);

}  // namespace locksim
