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

#include "locksim/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "locksim/rng.hpp"

namespace locksim {
namespace {

const char* const kEventColumns[kEventKindCount] = {
    "instruction", "store",      "enter_c", "lock_miss",
    "cache_miss",  "spin",       "exit_c",  "enter_nc"};

void fill_queue_stats(const std::vector<std::vector<uint32_t>>& trace,
                      double& mean, uint64_t& max) {
  mean = 0.0;
  max = 0;
  uint64_t sum = 0;
  uint64_t cells = 0;
  for (const auto& sample : trace) {
    for (const uint32_t v : sample) {
      sum += v;
      max = std::max<uint64_t>(max, v);
      ++cells;
    }
  }
  if (cells > 0) mean = static_cast<double>(sum) / static_cast<double>(cells);
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::vector<uint64_t> derive_seeds(uint64_t base, std::size_t count) {
  std::vector<uint64_t> seeds;
  seeds.reserve(count);
  SplitMix64 rng(base);
  for (std::size_t i = 0; i < count; ++i) {
    seeds.push_back(i == 0 ? base : rng.next());
  }
  return seeds;
}

RunRow row_from_result(const RunSpec& spec, const SimResult& r) {
  RunRow row;
  row.config = spec.config.name;
  row.policy = spec.policy.to_string();
  row.cores = spec.cores;
  row.seed = spec.seed;
  row.max_ticks = spec.max_ticks;
  row.warmup_ticks = r.warmup_ticks;
  row.iterations = r.iterations;
  row.throughput = r.aggregate_throughput;
  row.per_core_throughput = r.per_core_throughput;
  row.wait_frac_mean = r.mean_lock_wait_fraction();
  row.wait_frac_max = r.lock_wait_fraction.empty()
                          ? 0.0
                          : *std::max_element(r.lock_wait_fraction.begin(),
                                              r.lock_wait_fraction.end());
  for (int k = 0; k < kEventKindCount; ++k) {
    row.events[k] = r.event_counts[static_cast<std::size_t>(k)];
    row.cycles[k] = r.event_cycles[static_cast<std::size_t>(k)];
  }
  fill_queue_stats(r.lock_queue_trace, row.lock_qlen_mean, row.lock_qlen_max);
  fill_queue_stats(r.bank_queue_trace, row.bank_qlen_mean, row.bank_qlen_max);
  return row;
}

RunRow run_one(const RunSpec& spec) {
  try {
    EngineOptions opt;
    opt.cores = spec.cores;
    opt.max_ticks = spec.max_ticks;
    opt.seed = spec.seed;
    opt.policy = spec.policy;
    opt.warmup_fraction = spec.warmup_fraction;
    return row_from_result(spec, run_simulation(spec.config, opt));
  } catch (const std::exception& e) {
    RunRow row;
    row.config = spec.config.name;
    row.policy = spec.policy.to_string();
    row.cores = spec.cores;
    row.seed = spec.seed;
    row.max_ticks = spec.max_ticks;
    row.error = e.what();
    return row;
  }
}

SweepResult sweep_serial(const std::vector<RunSpec>& specs) {
  SweepResult out;
  out.rows.resize(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out.rows[i] = run_one(specs[i]);
  }
  return out;
}

SweepResult sweep_parallel(const std::vector<RunSpec>& specs) {
  SweepResult out;
  out.rows.resize(specs.size());
  const auto n = static_cast<std::int64_t>(specs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    out.rows[static_cast<std::size_t>(i)] =
        run_one(specs[static_cast<std::size_t>(i)]);
  }
  return out;
}

void join_speedups(SweepResult& result) {
  std::map<std::tuple<std::string, std::string, uint64_t>, double> base;
  for (const auto& row : result.rows) {
    if (row.kind == "run" && row.cores == 1 && row.error.empty()) {
      base[{row.config, row.policy, row.seed}] = row.throughput;
    }
  }
  for (auto& row : result.rows) {
    if (row.kind != "run" || !row.error.empty()) continue;
    const auto it = base.find({row.config, row.policy, row.seed});
    if (it != base.end() && it->second > 0.0) {
      row.speedup = row.throughput / it->second;
    }
  }
}

void append_mean_rows(SweepResult& result) {
  using Key = std::tuple<std::string, std::string, uint32_t>;
  std::vector<Key> order;
  std::map<Key, std::vector<const RunRow*>> groups;
  for (const auto& row : result.rows) {
    if (row.kind != "run" || !row.error.empty()) continue;
    const Key key{row.config, row.policy, row.cores};
    auto [it, fresh] = groups.emplace(key, std::vector<const RunRow*>{});
    if (fresh) order.push_back(key);
    it->second.push_back(&row);
  }
  std::vector<RunRow> means;
  for (const auto& key : order) {
    const auto& members = groups[key];
    RunRow m;
    m.kind = "mean";
    m.config = std::get<0>(key);
    m.policy = std::get<1>(key);
    m.cores = std::get<2>(key);
    m.seed = members.size();
    m.max_ticks = members.front()->max_ticks;
    m.warmup_ticks = members.front()->warmup_ticks;
    const double n = static_cast<double>(members.size());
    double iters = 0.0;
    std::array<double, kEventKindCount> ev{}, cyc{};
    for (const RunRow* r : members) {
      iters += static_cast<double>(r->iterations);
      m.throughput += r->throughput;
      m.per_core_throughput += r->per_core_throughput;
      m.speedup += r->speedup;
      m.wait_frac_mean += r->wait_frac_mean;
      m.wait_frac_max += r->wait_frac_max;
      m.lock_qlen_mean += r->lock_qlen_mean;
      m.bank_qlen_mean += r->bank_qlen_mean;
      m.lock_qlen_max = std::max(m.lock_qlen_max, r->lock_qlen_max);
      m.bank_qlen_max = std::max(m.bank_qlen_max, r->bank_qlen_max);
      for (int k = 0; k < kEventKindCount; ++k) {
        ev[static_cast<std::size_t>(k)] += static_cast<double>(r->events[k]);
        cyc[static_cast<std::size_t>(k)] += static_cast<double>(r->cycles[k]);
      }
    }
    m.iterations = static_cast<uint64_t>(std::llround(iters / n));
    m.throughput /= n;
    m.per_core_throughput /= n;
    m.speedup /= n;
    m.wait_frac_mean /= n;
    m.wait_frac_max /= n;
    m.lock_qlen_mean /= n;
    m.bank_qlen_mean /= n;
    for (int k = 0; k < kEventKindCount; ++k) {
      m.events[k] = static_cast<uint64_t>(
          std::llround(ev[static_cast<std::size_t>(k)] / n));
      m.cycles[k] = static_cast<uint64_t>(
          std::llround(cyc[static_cast<std::size_t>(k)] / n));
    }
    means.push_back(std::move(m));
  }
  for (auto& m : means) result.rows.push_back(std::move(m));
}

std::string sweep_csv_header() {
  std::string h =
      "kind,config,policy,cores,seed,max_ticks,warmup_ticks,iterations,"
      "throughput,per_core_throughput,speedup,wait_frac_mean,wait_frac_max";
  for (const char* const c : kEventColumns) h += std::string(",ev_") + c;
  for (const char* const c : kEventColumns) h += std::string(",cyc_") + c;
  h += ",lock_qlen_mean,lock_qlen_max,bank_qlen_mean,bank_qlen_max,error";
  return h;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << sweep_csv_header() << '\n';
  for (const auto& r : result.rows) {
    os << r.kind << ',' << r.config << ',' << r.policy << ',' << r.cores << ','
       << r.seed << ',' << r.max_ticks << ',' << r.warmup_ticks << ','
       << r.iterations << ',' << format_double(r.throughput) << ','
       << format_double(r.per_core_throughput) << ','
       << format_double(r.speedup) << ',' << format_double(r.wait_frac_mean)
       << ',' << format_double(r.wait_frac_max);
    for (int k = 0; k < kEventKindCount; ++k) os << ',' << r.events[k];
    for (int k = 0; k < kEventKindCount; ++k) os << ',' << r.cycles[k];
    os << ',' << format_double(r.lock_qlen_mean) << ',' << r.lock_qlen_max
       << ',' << format_double(r.bank_qlen_mean) << ',' << r.bank_qlen_max
       << ',' << r.error << '\n';
  }
}

void write_sweep_json(std::ostream& os, const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) {
    nlohmann::json j;
    j["kind"] = r.kind;
    j["config"] = r.config;
    j["policy"] = r.policy;
    j["cores"] = r.cores;
    j["seed"] = r.seed;
    j["max_ticks"] = r.max_ticks;
    j["warmup_ticks"] = r.warmup_ticks;
    j["iterations"] = r.iterations;
    j["throughput"] = r.throughput;
    j["per_core_throughput"] = r.per_core_throughput;
    j["speedup"] = r.speedup;
    j["wait_frac_mean"] = r.wait_frac_mean;
    j["wait_frac_max"] = r.wait_frac_max;
    for (int k = 0; k < kEventKindCount; ++k) {
      j["events"][kEventColumns[k]] = r.events[k];
      j["cycles"][kEventColumns[k]] = r.cycles[k];
    }
    j["lock_qlen_mean"] = r.lock_qlen_mean;
    j["lock_qlen_max"] = r.lock_qlen_max;
    j["bank_qlen_mean"] = r.bank_qlen_mean;
    j["bank_qlen_max"] = r.bank_qlen_max;
    j["error"] = r.error;
    rows.push_back(std::move(j));
  }
  os << rows.dump(2) << '\n';
}

}  // namespace locksim
