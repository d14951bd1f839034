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
#include <stdexcept>
#include <string>
#include <vector>

namespace locksim {

// Thrown for malformed configuration input. Mapped to exit code 2 by the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the engine detects a broken internal invariant. Exit code 3.
class EngineError : public std::runtime_error {
 public:
  explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

enum class Topology : uint8_t { NUMA, UMA };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

struct PlatformConfig {
  uint32_t chips = 8;
  uint32_t cores_per_chip = 4;
  uint32_t memory_banks = 8;
  uint64_t mem_latency = 1;
  Topology topology = Topology::NUMA;

  uint32_t total_cores() const { return chips * cores_per_chip; }
  bool operator==(const PlatformConfig&) const = default;
};

// One non-critical code section: `interval` instruction cycles before each
// miss and before the closing instruction block, `misses` cache misses,
// selected with probability `prob` each time the section boundary is reached.
struct SectionSpec {
  uint64_t interval = 0;
  uint32_t misses = 0;
  double prob = 1.0;

  bool operator==(const SectionSpec&) const = default;
};

// One critical section. `lock` is the dense lock index, `bank` the memory
// bank holding the lock word. All specs sharing a lock share its bank.
struct CriticalSectionSpec {
  uint64_t interval = 0;
  uint32_t misses = 0;
  double prob = 1.0;
  uint32_t lock = 0;
  uint32_t bank = 0;
  std::string lock_name = "l0";

  bool operator==(const CriticalSectionSpec&) const = default;
};

struct WorkloadConfig {
  std::vector<SectionSpec> noncritical;
  std::vector<CriticalSectionSpec> critical;

  uint32_t num_locks() const;
  bool operator==(const WorkloadConfig&) const = default;
};

struct SimConfig {
  std::string name = "unnamed";
  PlatformConfig platform;
  WorkloadConfig workload;

  bool operator==(const SimConfig&) const = default;
};

// Validates and canonicalizes a config in place: probability groups must sum
// to 1 within 2% and are renormalized to sum exactly 1; lock/bank references
// must be consistent and in range. Throws ConfigError.
void validate_config(SimConfig& cfg);

}  // namespace locksim
