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

#include "locksim/scalval.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace locksim {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos
                      ? std::string()
                      : field.substr(first, last - first + 1));
  }
  return out;
}

void parse_meta(const std::string& line, Profile& p) {
  std::istringstream ss(line.substr(1));
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    try {
      if (key == "cores") p.core_count = static_cast<uint32_t>(std::stoul(value));
      if (key == "throughput") p.throughput = std::stod(value);
    } catch (const std::exception&) {
      throw ConfigError("bad profile metadata: " + line);
    }
  }
}

}  // namespace

Profile read_profile_csv(std::istream& is) {
  Profile p;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    if (line[0] == '#') {
      parse_meta(line, p);
      continue;
    }
    auto fields = split_csv(line);
    if (!have_header) {
      if (fields.size() < 2) throw ConfigError("profile header too short");
      have_header = true;
      continue;
    }
    if (fields.size() < 2) {
      throw ConfigError("profile row too short at '" + fields[0] + "'");
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
      p.entries.push_back({fields[0], v});
    } catch (const std::exception&) {
      throw ConfigError("bad profile value for '" + fields[0] + "'");
    }
  }
  if (p.entries.empty()) throw ConfigError("empty profile");
  return p;
}

Profile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile: " + path);
  return read_profile_csv(in);
}

void write_profile_csv(std::ostream& os, const Profile& p) {
  os << "# cores=" << p.core_count << " throughput=" << p.throughput << "\n";
  os << "func,time_per_cycle\n";
  for (const auto& e : p.entries) {
    os << e.func << ',' << e.time_per_cycle << '\n';
  }
}

double computation_cycle(uint32_t cores, double throughput) {
  if (throughput <= 0.0) throw ConfigError("throughput must be positive");
  return static_cast<double>(cores) / throughput;
}

Profile profile_from_result(const SimResult& r) {
  Profile p;
  p.core_count = r.cores;
  p.throughput = r.aggregate_throughput;
  if (r.iterations == 0) throw ConfigError("result completed no iterations");
  const double iters = static_cast<double>(r.iterations);
  for (int k = 0; k < kEventKindCount; ++k) {
    p.entries.push_back(
        {to_string(static_cast<EventKind>(k)),
         static_cast<double>(r.event_cycles[static_cast<std::size_t>(k)]) /
             iters});
  }
  return p;
}

ScalabilityReport scalability_values(const Profile& single,
                                     const Profile& multi) {
  std::map<std::string, ScalabilityEntry> merged;
  for (const auto& e : single.entries) {
    auto& m = merged[e.func];
    m.func = e.func;
    m.single_time += e.time_per_cycle;
  }
  for (const auto& e : multi.entries) {
    auto& m = merged[e.func];
    m.func = e.func;
    m.multi_time += e.time_per_cycle;
  }
  ScalabilityReport report;
  for (auto& [name, entry] : merged) {
    entry.value = entry.multi_time - entry.single_time;
    if (entry.value > 0.0) report.positive_total += entry.value;
    report.entries.push_back(std::move(entry));
  }
  for (auto& entry : report.entries) {
    entry.weight = entry.value > 0.0 && report.positive_total > 0.0
                       ? entry.value / report.positive_total
                       : 0.0;
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const ScalabilityEntry& a, const ScalabilityEntry& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.func < b.func;
            });
  return report;
}

double top_coverage(const ScalabilityReport& report, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(k, report.entries.size()); ++i) {
    sum += report.entries[i].weight;
  }
  return sum;
}

void write_report_csv(std::ostream& os, const ScalabilityReport& report) {
  os << "func,single_time,multi_time,value,weight\n";
  for (const auto& e : report.entries) {
    os << e.func << ',' << e.single_time << ',' << e.multi_time << ','
       << e.value << ',' << e.weight << '\n';
  }
}

}  // namespace locksim
