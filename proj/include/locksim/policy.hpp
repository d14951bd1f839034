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

#include "locksim/types.hpp"

namespace locksim {

enum class PolicyKind : uint8_t {
  Ticket,              // every queue change invalidates all spinning waiters
  RequesterThreshold,  // park when the waiter count exceeds a threshold
  Blocking,            // always park; context switch at park and at wake
  LocalSpin            // waiters spin locally; release notifies the head only
};

// How a particular waiter waits, fixed at enqueue time.
enum class WaitMode : uint8_t { SpinBroadcast, Parked, LocalSpin };

inline constexpr uint64_t kUnlimitedThreshold = UINT64_MAX;

struct LockPolicy {
  PolicyKind kind = PolicyKind::Ticket;
  uint64_t threshold = 0;          // RequesterThreshold only
  uint64_t wake_cost = 380;        // RequesterThreshold unpark cost
  uint64_t ctx_switch_cost = 11624;  // Blocking, charged at park and wake
  uint64_t notify_cost = 0;        // LocalSpin hand-off cost

  // `waiters` is the queue length excluding the holder, before the requester
  // joins.
  WaitMode wait_mode(uint64_t waiters) const;

  // Whether a waiter in `mode` takes a coherence miss when the lock queue
  // changes.
  static bool receives_broadcast(WaitMode mode) {
    return mode == WaitMode::SpinBroadcast;
  }

  std::string to_string() const;

  // Accepts "ticket", "requester:<threshold|inf>:<wake>", "blocking:<ctx>",
  // "localspin:<notify>". Throws ConfigError on malformed input.
  static LockPolicy parse(const std::string& text);

  bool operator==(const LockPolicy&) const = default;
};

}  // namespace locksim
