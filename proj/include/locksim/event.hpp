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
#include <string>
#include <vector>

#include "locksim/types.hpp"

namespace locksim {

// Atomic kinds execute directly; the three composite kinds expand in place at
// the head of a core's event queue when handled.
enum class EventKind : uint8_t {
  Instruction,     // advance local time by `duration`
  Store,           // bank write; acquire when followed by Spin, else release
  EnterCritical,   // composite: lock acquisition plus critical body
  LockMiss,        // coherence miss on a lock word; serialized by its bank
  CacheMiss,       // data miss to a uniformly random bank
  Spin,            // wait until at the head of the lock queue
  ExitCritical,    // composite: lock release
  EnterNonCritical // composite: non-critical body
};

inline constexpr int kEventKindCount = 8;

// Stable short names used in reports and traces.
std::string to_string(EventKind k);

// Bank sentinel for a lock-handoff notification that bypasses the bank queue
// and costs a fixed `duration` instead.
inline constexpr int32_t kFixedCostBank = -2;

struct Event {
  EventKind kind;
  int32_t lock = -1;      // lock index for Store/LockMiss/Spin/ExitCritical
  int32_t bank = -1;      // bank for Store/LockMiss; unresolved for CacheMiss
  uint64_t duration = 0;  // Instruction cycles, or fixed-cost miss cycles

  bool operator==(const Event&) const = default;
};

// [LockMiss, Store, Spin, (Instruction, CacheMiss)*misses, Instruction,
//  ExitCritical]; length 2*misses + 5.
std::vector<Event> expand_enter_critical(const CriticalSectionSpec& cs);

// [LockMiss, Store, EnterNonCritical] against the releasing lock's bank.
std::vector<Event> expand_exit_critical(int32_t lock, int32_t bank);

// [(Instruction, CacheMiss)*misses, Instruction, EnterCritical];
// length 2*misses + 2.
std::vector<Event> expand_enter_noncritical(const SectionSpec& nc);

}  // namespace locksim
