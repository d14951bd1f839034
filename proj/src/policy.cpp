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

#include "locksim/policy.hpp"

#include <charconv>
#include <vector>

namespace locksim {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

uint64_t parse_u64(const std::string& s, const char* what) {
  uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string("bad policy ") + what + ": " + s);
  }
  return value;
}

}  // namespace

WaitMode LockPolicy::wait_mode(uint64_t waiters) const {
  switch (kind) {
    case PolicyKind::Ticket:
      return WaitMode::SpinBroadcast;
    case PolicyKind::RequesterThreshold:
      return waiters > threshold ? WaitMode::Parked : WaitMode::SpinBroadcast;
    case PolicyKind::Blocking:
      return WaitMode::Parked;
    case PolicyKind::LocalSpin:
      return WaitMode::LocalSpin;
  }
  return WaitMode::SpinBroadcast;
}

std::string LockPolicy::to_string() const {
  switch (kind) {
    case PolicyKind::Ticket:
      return "ticket";
    case PolicyKind::RequesterThreshold: {
      const std::string t = threshold == kUnlimitedThreshold
                                ? "inf"
                                : std::to_string(threshold);
      return "requester:" + t + ":" + std::to_string(wake_cost);
    }
    case PolicyKind::Blocking:
      return "blocking:" + std::to_string(ctx_switch_cost);
    case PolicyKind::LocalSpin:
      return "localspin:" + std::to_string(notify_cost);
  }
  return "ticket";
}

LockPolicy LockPolicy::parse(const std::string& text) {
  const auto parts = split(text, ':');
  LockPolicy p;
  if (parts[0] == "ticket") {
    if (parts.size() != 1) throw ConfigError("ticket takes no parameters");
    p.kind = PolicyKind::Ticket;
    return p;
  }
  if (parts[0] == "requester") {
    if (parts.size() > 3) throw ConfigError("requester:<threshold>[:<wake>]");
    p.kind = PolicyKind::RequesterThreshold;
    if (parts.size() >= 2) {
      p.threshold = parts[1] == "inf" ? kUnlimitedThreshold
                                      : parse_u64(parts[1], "threshold");
    }
    if (parts.size() == 3) p.wake_cost = parse_u64(parts[2], "wake cost");
    return p;
  }
  if (parts[0] == "blocking") {
    if (parts.size() > 2) throw ConfigError("blocking[:<ctx>]");
    p.kind = PolicyKind::Blocking;
    if (parts.size() == 2) {
      p.ctx_switch_cost = parse_u64(parts[1], "context-switch cost");
    }
    return p;
  }
  if (parts[0] == "localspin") {
    if (parts.size() > 2) throw ConfigError("localspin[:<notify>]");
    p.kind = PolicyKind::LocalSpin;
    if (parts.size() == 2) p.notify_cost = parse_u64(parts[1], "notify cost");
    return p;
  }
  throw ConfigError("unknown policy: " + text);
}

}  // namespace locksim
