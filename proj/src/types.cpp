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

#include "locksim/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace locksim {
namespace {

// Probability groups must sum to 1 within this window before renormalization;
// wider gaps indicate a typo rather than rounding.
constexpr double kProbSumWindow = 0.02;

double prob_sum_or_throw(const std::vector<double>& probs, const char* what) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p > 0.0) || p > 1.0) {
      throw ConfigError(std::string(what) +
                        ": section probabilities must lie in (0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumWindow) {
    throw ConfigError(std::string(what) +
                      ": section probabilities must sum to 1 within 2%");
  }
  return sum;
}

}  // namespace

std::string to_string(Topology t) {
  return t == Topology::NUMA ? "NUMA" : "UMA";
}

Topology topology_from_string(const std::string& s) {
  if (s == "NUMA") return Topology::NUMA;
  if (s == "UMA") return Topology::UMA;
  throw ConfigError("unknown topology: " + s);
}

uint32_t WorkloadConfig::num_locks() const {
  uint32_t n = 0;
  for (const auto& cs : critical) n = std::max(n, cs.lock + 1);
  return critical.empty() ? 0 : n;
}

void validate_config(SimConfig& cfg) {
  const auto& p = cfg.platform;
  if (p.chips == 0 || p.cores_per_chip == 0) {
    throw ConfigError(cfg.name + ": platform must have at least one core");
  }
  if (p.memory_banks == 0) {
    throw ConfigError(cfg.name + ": platform must have at least one bank");
  }
  if (p.mem_latency == 0) {
    throw ConfigError(cfg.name + ": mem_latency must be positive");
  }
  if (p.topology == Topology::UMA && p.memory_banks != 1) {
    throw ConfigError(cfg.name + ": UMA platforms have exactly one bank");
  }

  auto& w = cfg.workload;
  if (w.noncritical.empty() && w.critical.empty()) return;  // platform overlay
  if (w.noncritical.empty() || w.critical.empty()) {
    throw ConfigError(cfg.name +
                      ": workload needs both section groups (the program "
                      "alternates non-critical and critical sections)");
  }

  std::vector<double> nc_probs, cs_probs;
  for (const auto& s : w.noncritical) nc_probs.push_back(s.prob);
  for (const auto& s : w.critical) cs_probs.push_back(s.prob);
  // Renormalization skips sums already at 1 within rounding noise so that
  // validating twice is the identity (serialize/parse round trips exactly).
  const double nc_sum = prob_sum_or_throw(nc_probs, "noncritical");
  const double cs_sum = prob_sum_or_throw(cs_probs, "critical");
  if (std::abs(nc_sum - 1.0) > 1e-12) {
    for (auto& s : w.noncritical) s.prob /= nc_sum;
  }
  if (std::abs(cs_sum - 1.0) > 1e-12) {
    for (auto& s : w.critical) s.prob /= cs_sum;
  }

  // Lock indices must be dense from 0 and each lock must live on one bank.
  std::map<uint32_t, uint32_t> lock_bank;
  std::map<uint32_t, std::string> lock_name;
  for (const auto& cs : w.critical) {
    if (cs.bank >= p.memory_banks) {
      throw ConfigError(cfg.name + ": lock bank out of range");
    }
    auto [it, fresh] = lock_bank.emplace(cs.lock, cs.bank);
    if (!fresh && it->second != cs.bank) {
      throw ConfigError(cfg.name + ": one lock mapped to two banks");
    }
    auto [nit, nfresh] = lock_name.emplace(cs.lock, cs.lock_name);
    if (!nfresh && nit->second != cs.lock_name) {
      throw ConfigError(cfg.name + ": one lock index with two names");
    }
  }
  const uint32_t n_locks = w.num_locks();
  for (uint32_t l = 0; l < n_locks; ++l) {
    if (!lock_bank.count(l)) {
      throw ConfigError(cfg.name + ": lock indices must be dense from 0");
    }
  }
}

}  // namespace locksim
