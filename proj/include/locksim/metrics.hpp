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

#include "locksim/types.hpp"

namespace locksim {

// Co-run execution times: corun_times[i][j] is target j's time with
// background i; solo_times[j] is target j's time alone.
struct CoRunTable {
  std::vector<std::string> names;
  std::vector<double> solo_times;
  std::vector<std::vector<double>> corun_times;
};

// CSV with a header row of target names, one row per background, and a final
// row whose name is "--" holding the solo times.
CoRunTable read_corun_csv(std::istream& is);
CoRunTable read_corun_file(const std::string& path);

// d[i][j] = (T_ij - T_j) / T_j.
std::vector<std::vector<double>> degradation_matrix(const CoRunTable& t);

struct IntensitySensitivity {
  std::vector<double> intensity;    // row norms: how much i hurts others
  std::vector<double> sensitivity;  // column norms: how much j is hurt
};

IntensitySensitivity intensity_sensitivity(
    const std::vector<std::vector<double>>& d);

double pearson_correlation(const std::vector<double>& x,
                           const std::vector<double>& y);
double cosine_similarity(const std::vector<double>& x,
                         const std::vector<double>& y);

// One candidate heuristic metric: solo values per application plus the
// co-run inflation matrix measured in that metric.
struct MetricVector {
  std::string name;
  std::vector<double> values;                        // V_k, solo per app
  std::vector<std::vector<double>> inflation;        // MD_k, same shape as d
};

struct MetricScore {
  std::string name;
  double correlation = 0.0;  // cosine of V_k with the intensity vector
  double stability = 0.0;    // mean column norm of MD_k; lower is steadier
  double ratio = 0.0;        // correlation / stability
};

struct MetricSelection {
  std::vector<MetricScore> scores;
  std::size_t best_index = 0;
};

// Picks the metric maximizing correlation / stability.
MetricSelection select_metric(const std::vector<double>& intensity,
                              const std::vector<MetricVector>& candidates);

// Same ranking applied to precomputed correlation/stability pairs, as loaded
// from a metric table CSV (metric,correlation,stability[,reported_ratio]).
struct MetricTableRow {
  std::string name;
  double correlation = 0.0;
  double stability = 0.0;
  double reported_ratio = 0.0;  // 0 when absent
};

std::vector<MetricTableRow> read_metric_table_csv(std::istream& is);
std::vector<MetricTableRow> read_metric_table_file(const std::string& path);
MetricSelection rank_metric_table(const std::vector<MetricTableRow>& rows);

// One scheduling slice: shared-cache accesses and instructions retired.
struct SliceSample {
  double accesses = 0.0;
  double instructions = 0.0;
};

// Cumulative access rate over the history: sum(accesses)/sum(instructions).
double running_access_rate(const std::vector<SliceSample>& history);

// Candidate task considered when pairing complementary resource demands.
struct Candidate {
  uint64_t id = 0;
  double access_rate = 0.0;
};

// Scans at most max_scan candidates and returns the index whose rate,
// summed with current_rate, lands closest to midpoint; -1 if none.
int pick_complement(double current_rate, const std::vector<Candidate>& cands,
                    double midpoint, std::size_t max_scan);

// executions[j][i] = execution time of instance i in execution j.
struct WorkloadStats {
  double mean = 0.0;      // grand mean over all instances and executions
  double variance = 0.0;  // variance of per-execution means about the grand mean
};

WorkloadStats workload_stats(const std::vector<std::vector<double>>& executions);

}  // namespace locksim
