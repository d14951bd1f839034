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

#include "locksim/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
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

bool data_line(const std::string& line) {
  for (const char ch : line) {
    if (ch == '#') return false;
    if (!std::isspace(static_cast<unsigned char>(ch))) return true;
  }
  return false;
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + s + "' in " + context);
  }
}

double norm(const std::vector<double>& v) {
  double sum = 0.0;
  for (const double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

CoRunTable read_corun_csv(std::istream& is) {
  CoRunTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!data_line(line)) continue;
    auto fields = split_csv(line);
    if (!have_header) {
      if (fields.size() < 2) throw ConfigError("co-run header needs targets");
      t.names.assign(fields.begin() + 1, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != t.names.size() + 1) {
      throw ConfigError("co-run row width mismatch at '" + fields[0] + "'");
    }
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      row.push_back(parse_double(fields[i], "co-run row '" + fields[0] + "'"));
    }
    if (fields[0] == "--") {
      t.solo_times = std::move(row);
    } else {
      t.corun_times.push_back(std::move(row));
    }
  }
  if (!have_header) throw ConfigError("empty co-run table");
  if (t.solo_times.empty()) {
    throw ConfigError("co-run table lacks the solo row ('--')");
  }
  return t;
}

CoRunTable read_corun_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open co-run table: " + path);
  return read_corun_csv(in);
}

std::vector<std::vector<double>> degradation_matrix(const CoRunTable& t) {
  std::vector<std::vector<double>> d;
  d.reserve(t.corun_times.size());
  for (const auto& row : t.corun_times) {
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (t.solo_times[j] <= 0.0) {
        throw ConfigError("solo times must be positive");
      }
      out[j] = (row[j] - t.solo_times[j]) / t.solo_times[j];
    }
    d.push_back(std::move(out));
  }
  return d;
}

IntensitySensitivity intensity_sensitivity(
    const std::vector<std::vector<double>>& d) {
  IntensitySensitivity r;
  if (d.empty()) return r;
  const std::size_t cols = d[0].size();
  r.intensity.resize(d.size(), 0.0);
  r.sensitivity.resize(cols, 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].size() != cols) throw ConfigError("ragged degradation matrix");
    r.intensity[i] = norm(d[i]);
    for (std::size_t j = 0; j < cols; ++j) {
      r.sensitivity[j] += d[i][j] * d[i][j];
    }
  }
  for (double& s : r.sensitivity) s = std::sqrt(s);
  return r;
}

double pearson_correlation(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw ConfigError("correlation needs two equal nonempty vectors");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double cosine_similarity(const std::vector<double>& x,
                         const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw ConfigError("similarity needs two equal nonempty vectors");
  }
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += x[i] * y[i];
  const double nx = norm(x);
  const double ny = norm(y);
  if (nx <= 0.0 || ny <= 0.0) return 0.0;
  return sxy / (nx * ny);
}

MetricSelection select_metric(const std::vector<double>& intensity,
                              const std::vector<MetricVector>& candidates) {
  if (candidates.empty()) throw ConfigError("no candidate metrics");
  MetricSelection sel;
  for (const auto& cand : candidates) {
    MetricScore score;
    score.name = cand.name;
    score.correlation = cosine_similarity(intensity, cand.values);
    const auto cols = intensity_sensitivity(cand.inflation);
    double mean_col = 0.0;
    for (const double s : cols.sensitivity) mean_col += s;
    score.stability = cols.sensitivity.empty()
                          ? 0.0
                          : mean_col / static_cast<double>(cols.sensitivity.size());
    score.ratio = score.stability > 0.0
                      ? score.correlation / score.stability
                      : std::numeric_limits<double>::infinity();
    sel.scores.push_back(std::move(score));
  }
  for (std::size_t i = 1; i < sel.scores.size(); ++i) {
    if (sel.scores[i].ratio > sel.scores[sel.best_index].ratio) {
      sel.best_index = i;
    }
  }
  return sel;
}

std::vector<MetricTableRow> read_metric_table_csv(std::istream& is) {
  std::vector<MetricTableRow> rows;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!data_line(line)) continue;
    auto fields = split_csv(line);
    if (!have_header) {
      if (fields.size() < 3) throw ConfigError("metric table header too short");
      have_header = true;
      continue;
    }
    if (fields.size() < 3) {
      throw ConfigError("metric table row too short at '" + fields[0] + "'");
    }
    MetricTableRow row;
    row.name = fields[0];
    row.correlation = parse_double(fields[1], "metric '" + row.name + "'");
    row.stability = parse_double(fields[2], "metric '" + row.name + "'");
    if (fields.size() > 3 && !fields[3].empty()) {
      row.reported_ratio = parse_double(fields[3], "metric '" + row.name + "'");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("empty metric table");
  return rows;
}

std::vector<MetricTableRow> read_metric_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open metric table: " + path);
  return read_metric_table_csv(in);
}

MetricSelection rank_metric_table(const std::vector<MetricTableRow>& rows) {
  if (rows.empty()) throw ConfigError("empty metric table");
  MetricSelection sel;
  for (const auto& row : rows) {
    MetricScore score;
    score.name = row.name;
    score.correlation = row.correlation;
    score.stability = row.stability;
    score.ratio = row.stability > 0.0
                      ? row.correlation / row.stability
                      : std::numeric_limits<double>::infinity();
    sel.scores.push_back(std::move(score));
  }
  for (std::size_t i = 1; i < sel.scores.size(); ++i) {
    if (sel.scores[i].ratio > sel.scores[sel.best_index].ratio) {
      sel.best_index = i;
    }
  }
  return sel;
}

double running_access_rate(const std::vector<SliceSample>& history) {
  double acc = 0.0, instr = 0.0;
  for (const auto& s : history) {
    acc += s.accesses;
    instr += s.instructions;
  }
  return instr > 0.0 ? acc / instr : 0.0;
}

int pick_complement(double current_rate, const std::vector<Candidate>& cands,
                    double midpoint, std::size_t max_scan) {
  const std::size_t limit = std::min(max_scan, cands.size());
  int best = -1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < limit; ++i) {
    const double gap = std::abs(current_rate + cands[i].access_rate - midpoint);
    if (gap < best_gap) {
      best_gap = gap;
      best = static_cast<int>(i);
    }
  }
  return best;
}

WorkloadStats workload_stats(
    const std::vector<std::vector<double>>& executions) {
  WorkloadStats st;
  if (executions.empty()) return st;
  double total = 0.0;
  std::size_t count = 0;
  std::vector<double> exec_means;
  exec_means.reserve(executions.size());
  for (const auto& exec : executions) {
    if (exec.empty()) throw ConfigError("execution with no instances");
    double sum = 0.0;
    for (const double v : exec) sum += v;
    total += sum;
    count += exec.size();
    exec_means.push_back(sum / static_cast<double>(exec.size()));
  }
  st.mean = total / static_cast<double>(count);
  double var = 0.0;
  for (const double m : exec_means) var += (m - st.mean) * (m - st.mean);
  st.variance = var / static_cast<double>(exec_means.size());
  return st;
}

}  // namespace locksim
