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

#include "locksim/mva.hpp"

#include <cstddef>

namespace locksim {

std::vector<MvaPoint> mva_solve(const QueueingModel& model,
                                uint32_t max_population) {
  if (model.think_time < 0.0) throw ConfigError("think time must be >= 0");
  for (const auto& c : model.centers) {
    if (c.service < 0.0 || c.visits < 0.0) {
      throw ConfigError("center parameters must be >= 0");
    }
  }
  const std::size_t k = model.centers.size();
  std::vector<MvaPoint> out;
  out.reserve(max_population);
  std::vector<double> q(k, 0.0);  // Q_k at the previous population
  double x1 = 0.0;
  for (uint32_t n = 1; n <= max_population; ++n) {
    MvaPoint p;
    p.population = n;
    p.residence.resize(k);
    p.queue_len.resize(k);
    double demand = model.think_time;
    for (std::size_t i = 0; i < k; ++i) {
      p.residence[i] = model.centers[i].service * (1.0 + q[i]);
      demand += model.centers[i].visits * p.residence[i];
    }
    if (demand <= 0.0) {
      throw ConfigError("model has zero total demand");
    }
    p.throughput = static_cast<double>(n) / demand;
    for (std::size_t i = 0; i < k; ++i) {
      p.queue_len[i] = p.throughput * model.centers[i].visits * p.residence[i];
      q[i] = p.queue_len[i];
    }
    if (n == 1) x1 = p.throughput;
    p.speedup = x1 > 0.0 ? p.throughput / x1 : 0.0;
    out.push_back(std::move(p));
  }
  return out;
}

QueueingModel workload_to_model(const SimConfig& cfg) {
  const auto& w = cfg.workload;
  if (w.noncritical.empty() || w.critical.empty()) {
    throw ConfigError(cfg.name + ": config carries no workload");
  }
  const double latency = static_cast<double>(cfg.platform.mem_latency);
  const auto body = [latency](uint64_t interval, uint32_t misses) {
    return static_cast<double>(misses + 1) * static_cast<double>(interval) +
           static_cast<double>(misses) * latency;
  };

  QueueingModel m;
  for (const auto& s : w.noncritical) {
    m.think_time += s.prob * body(s.interval, s.misses);
  }
  m.centers.resize(w.num_locks());
  std::vector<double> weight(m.centers.size(), 0.0);
  for (const auto& s : w.critical) {
    m.centers[s.lock].service += s.prob * body(s.interval, s.misses);
    weight[s.lock] += s.prob;
  }
  for (std::size_t i = 0; i < m.centers.size(); ++i) {
    // service accumulated prob-weighted sums; normalize to the conditional
    // mean and keep the selection probability as the visit ratio.
    if (weight[i] > 0.0) m.centers[i].service /= weight[i];
    m.centers[i].visits = weight[i];
  }
  return m;
}

}  // namespace locksim
