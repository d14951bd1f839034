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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "locksim/event.hpp"
#include "locksim/policy.hpp"
#include "locksim/types.hpp"

namespace locksim {

inline constexpr uint64_t kInvalidTimestamp = UINT64_MAX;

struct EngineOptions {
  uint32_t cores = 1;
  uint64_t max_ticks = 10'000'000;
  uint64_t seed = 42;
  LockPolicy policy;
  double warmup_fraction = 0.05;     // leading ticks excluded from statistics
  uint64_t sample_interval = 1000;   // queue-length trace period
  bool record_event_log = false;
};

// Flags on a logged record.
inline constexpr uint8_t kLogAcquire = 1;   // Spin consumed at queue head
inline constexpr uint8_t kLogRelease = 2;   // releasing Store completed
inline constexpr uint8_t kLogEnqueue = 4;   // acquiring Store completed
inline constexpr uint8_t kLogParked = 8;    // Spin dispatched off-head

struct LogRecord {
  uint64_t tick;      // dispatch time
  uint64_t ts_after;  // core timestamp after handling; kInvalidTimestamp if parked
  uint32_t core;
  EventKind kind;
  uint8_t flags;
  int32_t lock;
  int32_t bank;       // resolved bank; -1 none, kFixedCostBank for notifies

  bool operator==(const LogRecord&) const = default;
};

struct SimResult {
  uint32_t cores = 0;
  uint64_t total_ticks = 0;    // simulated horizon (= max_ticks)
  uint64_t warmup_ticks = 0;
  uint64_t iterations = 0;     // completed cycles after warm-up, all cores
  double aggregate_throughput = 0.0;  // iterations per tick
  double per_core_throughput = 0.0;   // aggregate / cores

  // Fraction of post-warm-up time each core spent between joining a lock
  // queue and acquiring: parked idle, injected misses and wake costs.
  std::vector<double> lock_wait_fraction;

  // Handled events per kind after warm-up. Spin counts spin episodes (a
  // dispatch that parks the core); an uncontended head pass is not a spin.
  std::array<uint64_t, kEventKindCount> event_counts{};

  // Cycles attributed per kind after warm-up. Parked idle and wake costs are
  // Spin time; memory kinds include their bank queueing delay.
  std::array<uint64_t, kEventKindCount> event_cycles{};

  // Queue depths sampled every sample_interval ticks: waiters per lock
  // (holder excluded) and pending accesses per bank.
  std::vector<std::vector<uint32_t>> lock_queue_trace;
  std::vector<std::vector<uint32_t>> bank_queue_trace;

  std::vector<LogRecord> event_log;  // populated when record_event_log

  double mean_lock_wait_fraction() const;
  double spin_lockmiss_event_share() const;

  bool operator==(const SimResult&) const = default;
};

// Runs one deterministic simulation. The config must already be validated.
SimResult run_simulation(const SimConfig& cfg, const EngineOptions& opt);

// Text dump of an event log, one record per line.
void write_event_log(std::ostream& os, const std::vector<LogRecord>& log);

}  // namespace locksim
