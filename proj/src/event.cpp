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

#include "locksim/event.hpp"

namespace locksim {

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Instruction: return "INSTRUCTION";
    case EventKind::Store: return "STORE";
    case EventKind::EnterCritical: return "ENTER_C";
    case EventKind::LockMiss: return "LOCK_MISS";
    case EventKind::CacheMiss: return "CACHE_MISS";
    case EventKind::Spin: return "SPIN";
    case EventKind::ExitCritical: return "EXIT_C";
    case EventKind::EnterNonCritical: return "ENTER_NC";
  }
  return "UNKNOWN";
}

std::vector<Event> expand_enter_critical(const CriticalSectionSpec& cs) {
  const auto lock = static_cast<int32_t>(cs.lock);
  const auto bank = static_cast<int32_t>(cs.bank);
  std::vector<Event> out;
  out.reserve(2 * cs.misses + 5);
  out.push_back({EventKind::LockMiss, lock, bank, 0});
  out.push_back({EventKind::Store, lock, bank, 0});
  out.push_back({EventKind::Spin, lock, bank, 0});
  for (uint32_t i = 0; i < cs.misses; ++i) {
    out.push_back({EventKind::Instruction, -1, -1, cs.interval});
    out.push_back({EventKind::CacheMiss, -1, -1, 0});
  }
  out.push_back({EventKind::Instruction, -1, -1, cs.interval});
  out.push_back({EventKind::ExitCritical, lock, bank, 0});
  return out;
}

std::vector<Event> expand_exit_critical(int32_t lock, int32_t bank) {
  return {{EventKind::LockMiss, lock, bank, 0},
          {EventKind::Store, lock, bank, 0},
          {EventKind::EnterNonCritical, -1, -1, 0}};
}

std::vector<Event> expand_enter_noncritical(const SectionSpec& nc) {
  std::vector<Event> out;
  out.reserve(2 * nc.misses + 2);
  for (uint32_t i = 0; i < nc.misses; ++i) {
    out.push_back({EventKind::Instruction, -1, -1, nc.interval});
    out.push_back({EventKind::CacheMiss, -1, -1, 0});
  }
  out.push_back({EventKind::Instruction, -1, -1, nc.interval});
  out.push_back({EventKind::EnterCritical, -1, -1, 0});
  return out;
}

}  // namespace locksim
