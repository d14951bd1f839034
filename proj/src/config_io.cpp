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

#include "locksim/config_io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace locksim {
namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

PlatformConfig parse_platform(const json& j) {
  PlatformConfig p;
  p.chips = get_field<uint32_t>(j, "chips", p.chips);
  p.cores_per_chip = get_field<uint32_t>(j, "cores_per_chip", p.cores_per_chip);
  p.memory_banks = get_field<uint32_t>(j, "memory_banks", p.memory_banks);
  p.mem_latency = get_field<uint64_t>(j, "mem_latency", p.mem_latency);
  p.topology = topology_from_string(
      get_field<std::string>(j, "topology", to_string(p.topology)));
  return p;
}

WorkloadConfig parse_workload(const json& j) {
  WorkloadConfig w;
  for (const auto& row : j.value("noncritical", json::array())) {
    SectionSpec s;
    s.interval = get_field<uint64_t>(row, "interval", 0);
    s.misses = get_field<uint32_t>(row, "misses", 0);
    s.prob = get_field<double>(row, "prob", 1.0);
    w.noncritical.push_back(s);
  }
  // Lock names map to dense indices in order of first appearance.
  std::map<std::string, uint32_t> lock_index;
  for (const auto& row : j.value("critical", json::array())) {
    CriticalSectionSpec s;
    s.interval = get_field<uint64_t>(row, "interval", 0);
    s.misses = get_field<uint32_t>(row, "misses", 0);
    s.prob = get_field<double>(row, "prob", 1.0);
    s.lock_name = get_field<std::string>(row, "lock", "l0");
    s.bank = get_field<uint32_t>(row, "bank", 0);
    auto [it, fresh] =
        lock_index.emplace(s.lock_name, static_cast<uint32_t>(lock_index.size()));
    s.lock = it->second;
    (void)fresh;
    w.critical.push_back(s);
  }
  return w;
}

}  // namespace

SimConfig parse_config(const std::string& json_text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(name + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(name + ": document must be an object");

  SimConfig cfg;
  cfg.name = get_field<std::string>(doc, "name", name);
  if (doc.contains("platform")) cfg.platform = parse_platform(doc.at("platform"));
  if (doc.contains("workload")) cfg.workload = parse_workload(doc.at("workload"));
  validate_config(cfg);
  return cfg;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::filesystem::path(path).stem().string());
}

std::string serialize_config(const SimConfig& cfg) {
  json doc;
  doc["name"] = cfg.name;
  doc["platform"] = {{"chips", cfg.platform.chips},
                     {"cores_per_chip", cfg.platform.cores_per_chip},
                     {"memory_banks", cfg.platform.memory_banks},
                     {"mem_latency", cfg.platform.mem_latency},
                     {"topology", to_string(cfg.platform.topology)}};
  if (!cfg.workload.noncritical.empty() || !cfg.workload.critical.empty()) {
    json nc = json::array();
    for (const auto& s : cfg.workload.noncritical) {
      nc.push_back({{"interval", s.interval},
                    {"misses", s.misses},
                    {"prob", s.prob}});
    }
    json cs = json::array();
    for (const auto& s : cfg.workload.critical) {
      cs.push_back({{"interval", s.interval},
                    {"misses", s.misses},
                    {"prob", s.prob},
                    {"lock", s.lock_name},
                    {"bank", s.bank}});
    }
    doc["workload"] = {{"noncritical", nc}, {"critical", cs}};
  }
  return doc.dump(2) + "\n";
}

SimConfig apply_platform(const SimConfig& base, const SimConfig& overlay) {
  SimConfig out = base;
  out.platform = overlay.platform;
  validate_config(out);
  return out;
}

}  // namespace locksim
