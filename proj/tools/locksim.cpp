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

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "locksim/config_io.hpp"
#include "locksim/engine.hpp"
#include "locksim/metrics.hpp"
#include "locksim/mva.hpp"
#include "locksim/policy.hpp"
#include "locksim/scalval.hpp"
#include "locksim/ssc.hpp"
#include "locksim/sweep.hpp"
#include "locksim/types.hpp"

namespace {

using namespace locksim;

// Output goes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<uint32_t> parse_core_list(const std::string& text) {
  std::vector<uint32_t> cores;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    uint32_t v = 0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size() || v == 0) {
      throw ConfigError("bad core list entry: " + item);
    }
    cores.push_back(v);
  }
  if (cores.empty()) throw ConfigError("empty core list");
  return cores;
}

SimConfig load_with_overrides(const std::string& config_path,
                              const std::string& platform_path,
                              uint64_t latency_override) {
  SimConfig cfg = load_config_file(config_path);
  if (!platform_path.empty()) {
    cfg = apply_platform(cfg, load_config_file(platform_path));
  }
  if (latency_override > 0) {
    cfg.platform.mem_latency = latency_override;
    validate_config(cfg);
  }
  return cfg;
}

void print_result_text(std::ostream& os, const RunSpec& spec,
                       const SimResult& r) {
  os << "config            " << spec.config.name << "\n"
     << "policy            " << spec.policy.to_string() << "\n"
     << "cores             " << r.cores << "\n"
     << "seed              " << spec.seed << "\n"
     << "ticks             " << r.total_ticks << " (warmup " << r.warmup_ticks
     << ")\n"
     << "iterations        " << r.iterations << "\n"
     << "throughput        " << r.aggregate_throughput << " iter/tick\n"
     << "per-core          " << r.per_core_throughput << " iter/tick\n"
     << "mean lock wait    " << r.mean_lock_wait_fraction() << "\n"
     << "spin+miss share   " << r.spin_lockmiss_event_share() << "\n";
  os << "events (count, cycles):\n";
  for (int k = 0; k < kEventKindCount; ++k) {
    const auto i = static_cast<std::size_t>(k);
    os << "  " << to_string(static_cast<EventKind>(k)) << " "
       << r.event_counts[i] << " " << r.event_cycles[i] << "\n";
  }
}

void emit_rows(std::ostream& os, SweepResult& result, const std::string& format,
               bool speedups, bool means) {
  if (speedups) join_speedups(result);
  if (means) append_mean_rows(result);
  if (format == "json") {
    write_sweep_json(os, result);
  } else {
    write_sweep_csv(os, result);
  }
}

struct CommonOpts {
  std::string config_path;
  std::string platform_path;
  uint64_t latency = 0;
  uint64_t max_ticks = 1'000'000;
  uint64_t seed = 42;
  double warmup = 0.05;
  std::string policy_text = "ticket";
  std::string format = "csv";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_config = true) {
  auto* cfg = cmd->add_option("--config", o.config_path, "workload config file");
  if (needs_config) cfg->required();
  cmd->add_option("--platform", o.platform_path,
                  "platform overlay config file");
  cmd->add_option("--latency", o.latency, "memory latency override (cycles)");
  cmd->add_option("--max-ticks", o.max_ticks, "simulated horizon in ticks");
  cmd->add_option("--seed", o.seed, "base random seed");
  cmd->add_option("--warmup", o.warmup, "warm-up fraction of the horizon");
  cmd->add_option("--policy", o.policy_text,
                  "ticket | requester:<t|inf>[:<wake>] | blocking[:<ctx>] | "
                  "localspin[:<notify>]");
  cmd->add_option("--format", o.format, "output format: csv | json | text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  cmd->add_option("--out", o.out_path, "output file (default stdout)");
}

int run_simulate(const CommonOpts& o, uint32_t cores,
                 const std::string& log_path) {
  RunSpec spec;
  spec.config = load_with_overrides(o.config_path, o.platform_path, o.latency);
  spec.policy = LockPolicy::parse(o.policy_text);
  spec.cores = cores;
  spec.seed = o.seed;
  spec.max_ticks = o.max_ticks;
  spec.warmup_fraction = o.warmup;

  EngineOptions opt;
  opt.cores = spec.cores;
  opt.max_ticks = spec.max_ticks;
  opt.seed = spec.seed;
  opt.policy = spec.policy;
  opt.warmup_fraction = spec.warmup_fraction;
  opt.record_event_log = !log_path.empty();
  const SimResult r = run_simulation(spec.config, opt);

  if (!log_path.empty()) {
    std::ofstream log(log_path);
    if (!log) throw ConfigError("cannot open event log file: " + log_path);
    write_event_log(log, r.event_log);
  }

  Sink sink(o.out_path);
  if (o.format == "text") {
    print_result_text(sink.stream(), spec, r);
  } else {
    SweepResult one;
    one.rows.push_back(row_from_result(spec, r));
    emit_rows(sink.stream(), one, o.format, false, false);
  }
  return 0;
}

int run_sweep(const CommonOpts& o, const std::vector<std::string>& config_paths,
              const std::vector<std::string>& policies,
              const std::string& cores_text, uint32_t seed_count, bool parallel,
              bool means) {
  std::vector<SimConfig> configs;
  for (const auto& path : config_paths) {
    configs.push_back(load_with_overrides(path, o.platform_path, o.latency));
  }
  std::vector<LockPolicy> parsed;
  for (const auto& p : policies) parsed.push_back(LockPolicy::parse(p));
  if (parsed.empty()) parsed.push_back(LockPolicy::parse(o.policy_text));
  const auto cores = parse_core_list(cores_text);
  const auto seeds = derive_seeds(o.seed, seed_count);

  std::vector<RunSpec> specs;
  for (const auto& cfg : configs) {
    for (const auto& policy : parsed) {
      for (const uint32_t n : cores) {
        for (const uint64_t s : seeds) {
          RunSpec spec;
          spec.config = cfg;
          spec.policy = policy;
          spec.cores = n;
          spec.seed = s;
          spec.max_ticks = o.max_ticks;
          spec.warmup_fraction = o.warmup;
          specs.push_back(std::move(spec));
        }
      }
    }
  }
  SweepResult result = parallel ? sweep_parallel(specs) : sweep_serial(specs);
  Sink sink(o.out_path);
  emit_rows(sink.stream(), result, o.format == "text" ? "csv" : o.format, true,
            means);
  return 0;
}

int run_baseline(const CommonOpts& o, uint32_t max_n) {
  const SimConfig cfg =
      load_with_overrides(o.config_path, o.platform_path, o.latency);
  const QueueingModel model = workload_to_model(cfg);
  const uint32_t limit = max_n > 0 ? max_n : cfg.platform.total_cores();
  const auto points = mva_solve(model, limit);

  Sink sink(o.out_path);
  std::ostream& os = sink.stream();
  if (o.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) {
      nlohmann::json j;
      j["population"] = p.population;
      j["throughput"] = p.throughput;
      j["speedup"] = p.speedup;
      j["queue_len"] = p.queue_len;
      j["residence"] = p.residence;
      arr.push_back(std::move(j));
    }
    os << arr.dump(2) << '\n';
    return 0;
  }
  os << "population,throughput,speedup";
  for (std::size_t i = 0; i < model.centers.size(); ++i) os << ",q_l" << i;
  os << '\n';
  for (const auto& p : points) {
    os << p.population << ',' << p.throughput << ',' << p.speedup;
    for (const double q : p.queue_len) os << ',' << q;
    os << '\n';
  }
  return 0;
}

int run_ssc(const CommonOpts& o, uint32_t max_n, uint32_t samples) {
  const SimConfig cfg =
      load_with_overrides(o.config_path, o.platform_path, o.latency);
  const LockPolicy policy = LockPolicy::parse(o.policy_text);
  const uint32_t limit = max_n > 0 ? max_n : cfg.platform.total_cores();

  std::map<uint32_t, double> cache;
  uint64_t simulations = 0;
  const WaitShareOracle oracle = [&](uint32_t n) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    EngineOptions opt;
    opt.cores = n;
    opt.max_ticks = o.max_ticks;
    opt.seed = o.seed;
    opt.policy = policy;
    opt.warmup_fraction = o.warmup;
    const double share = run_simulation(cfg, opt).mean_lock_wait_fraction();
    ++simulations;
    cache[n] = share;
    return share;
  };

  const SearchOutcome doubling = search_optimal(oracle, limit, samples);
  const SearchOutcome sweep = exhaustive_optimal(oracle, limit, samples);

  Sink sink(o.out_path);
  std::ostream& os = sink.stream();
  if (o.format == "json") {
    nlohmann::json j;
    j["search_best"] = doubling.best;
    j["search_calls"] = doubling.oracle_calls;
    j["search_value"] = useful_throughput(doubling.best, oracle(doubling.best));
    j["exhaustive_best"] = sweep.best;
    j["exhaustive_calls"] = sweep.oracle_calls;
    j["exhaustive_value"] = useful_throughput(sweep.best, oracle(sweep.best));
    j["simulations"] = simulations;
    os << j.dump(2) << '\n';
    return 0;
  }
  os << "doubling search: best=" << doubling.best
     << " calls=" << doubling.oracle_calls
     << " value=" << useful_throughput(doubling.best, oracle(doubling.best))
     << "\n";
  os << "exhaustive:      best=" << sweep.best << " calls=" << sweep.oracle_calls
     << " value=" << useful_throughput(sweep.best, oracle(sweep.best)) << "\n";
  os << "distinct simulations: " << simulations << "\n";
  return 0;
}

int run_metrics(const std::string& table_path, const std::string& metric_path,
                const std::string& format, const std::string& out_path) {
  const CoRunTable table = read_corun_file(table_path);
  const auto d = degradation_matrix(table);
  const auto is = intensity_sensitivity(d);
  const double cosine = cosine_similarity(is.intensity, is.sensitivity);
  const double pearson = pearson_correlation(is.intensity, is.sensitivity);

  Sink sink(out_path);
  std::ostream& os = sink.stream();
  if (format == "json") {
    nlohmann::json j;
    j["names"] = table.names;
    j["intensity"] = is.intensity;
    j["sensitivity"] = is.sensitivity;
    j["cosine"] = cosine;
    j["pearson"] = pearson;
    if (!metric_path.empty()) {
      const auto rows = read_metric_table_file(metric_path);
      const auto sel = rank_metric_table(rows);
      nlohmann::json scores = nlohmann::json::array();
      for (const auto& s : sel.scores) {
        scores.push_back({{"name", s.name},
                          {"correlation", s.correlation},
                          {"stability", s.stability},
                          {"ratio", s.ratio}});
      }
      j["metric_scores"] = std::move(scores);
      j["best_metric"] = sel.scores[sel.best_index].name;
    }
    os << j.dump(2) << '\n';
    return 0;
  }
  os << "app,intensity,sensitivity\n";
  for (std::size_t i = 0; i < is.intensity.size(); ++i) {
    os << table.names[i] << ',' << is.intensity[i] << ',' << is.sensitivity[i]
       << '\n';
  }
  os << "# cosine=" << cosine << " pearson=" << pearson << '\n';
  if (!metric_path.empty()) {
    const auto rows = read_metric_table_file(metric_path);
    const auto sel = rank_metric_table(rows);
    os << "metric,correlation,stability,ratio\n";
    for (const auto& s : sel.scores) {
      os << s.name << ',' << s.correlation << ',' << s.stability << ','
         << s.ratio << '\n';
    }
    os << "# best=" << sel.scores[sel.best_index].name << '\n';
  }
  return 0;
}

int run_scalval(const std::string& single_path, const std::string& multi_path,
                std::size_t top, const std::string& format,
                const std::string& out_path) {
  const Profile single = read_profile_file(single_path);
  const Profile multi = read_profile_file(multi_path);
  const ScalabilityReport report = scalability_values(single, multi);
  const double coverage = top_coverage(report, top);

  Sink sink(out_path);
  std::ostream& os = sink.stream();
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : report.entries) {
      rows.push_back({{"func", e.func},
                      {"single_time", e.single_time},
                      {"multi_time", e.multi_time},
                      {"value", e.value},
                      {"weight", e.weight}});
    }
    nlohmann::json j;
    j["entries"] = std::move(rows);
    j["positive_total"] = report.positive_total;
    j["top"] = top;
    j["top_coverage"] = coverage;
    os << j.dump(2) << '\n';
    return 0;
  }
  write_report_csv(os, report);
  os << "# top" << top << "_coverage=" << coverage << '\n';
  return 0;
}

// Named studies behind the headline curves. Each emits a normal sweep table.
int run_repro(const std::string& study, const std::string& configs_dir,
              const CommonOpts& o, bool parallel) {
  CommonOpts local = o;
  const auto cfg_path = [&](const char* name) {
    return configs_dir + "/" + name + ".json";
  };
  if (study == "throughput-curves") {
    return run_sweep(local,
                     {cfg_path("c1"), cfg_path("c2"), cfg_path("c3"),
                      cfg_path("c4")},
                     {"ticket"}, "1,2,3,4,6,8,12,16,20,24,28,32", 3, parallel,
                     true);
  }
  if (study == "latency-peaks") {
    std::vector<RunSpec> specs;
    for (const uint64_t lat : {uint64_t{1}, uint64_t{5}, uint64_t{10}}) {
      SimConfig cfg = load_with_overrides(cfg_path("c3"), o.platform_path, lat);
      cfg.name = "c3_lat" + std::to_string(lat);
      for (uint32_t n = 1; n <= 32; ++n) {
        for (const uint64_t s : derive_seeds(o.seed, 3)) {
          RunSpec spec;
          spec.config = cfg;
          spec.policy = LockPolicy::parse("ticket");
          spec.cores = n;
          spec.seed = s;
          spec.max_ticks = o.max_ticks;
          spec.warmup_fraction = o.warmup;
          specs.push_back(std::move(spec));
        }
      }
    }
    SweepResult result = parallel ? sweep_parallel(specs) : sweep_serial(specs);
    Sink sink(o.out_path);
    emit_rows(sink.stream(), result, "csv", true, true);
    return 0;
  }
  if (study == "policy-contrast") {
    local.latency = 300;
    return run_sweep(local, {cfg_path("c1")}, {"ticket", "requester:0:380"},
                     "1,2,3,4,6,8,12,16,24,32", 3, parallel, true);
  }
  if (study == "wait-curve") {
    return run_sweep(local, {cfg_path("c3")}, {"ticket"},
                     "1,2,4,6,8,10,12,14,15,16,18,20,24,28,32", 3, parallel,
                     true);
  }
  throw ConfigError("unknown study: " + study +
                    " (throughput-curves | latency-peaks | policy-contrast | "
                    "wait-curve)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic lock-contention simulator and analysis toolkit"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  uint32_t sim_cores = 1;
  std::string sim_log;
  auto* sim = app.add_subcommand("simulate", "run one simulation");
  add_common(sim, sim_opts);
  sim->add_option("--cores", sim_cores, "cores to simulate");
  sim->add_option("--event-log", sim_log, "write the event log to a file");
  sim->callback([&] { run_simulate(sim_opts, sim_cores, sim_log); });

  CommonOpts sweep_opts;
  std::vector<std::string> sweep_configs;
  std::vector<std::string> sweep_policies;
  std::string sweep_cores = "1,2,4,8,16,32";
  uint32_t sweep_seeds = 3;
  bool sweep_parallel_flag = false;
  bool sweep_means = true;
  auto* sw = app.add_subcommand("sweep", "run a grid of simulations");
  add_common(sw, sweep_opts, false);
  sw->add_option("--configs", sweep_configs, "workload config files")
      ->required();
  sw->add_option("--policies", sweep_policies, "policies (repeatable)");
  sw->add_option("--cores", sweep_cores, "comma-separated core counts");
  sw->add_option("--seeds", sweep_seeds, "number of derived seeds");
  sw->add_flag("--parallel", sweep_parallel_flag, "run workers in parallel");
  sw->add_flag("--means,!--no-means", sweep_means, "append per-group means");
  sw->callback([&] {
    run_sweep(sweep_opts, sweep_configs, sweep_policies, sweep_cores,
              sweep_seeds, sweep_parallel_flag, sweep_means);
  });

  CommonOpts mva_opts;
  uint32_t mva_max_n = 0;
  auto* mva = app.add_subcommand("baseline-mva",
                                 "closed queueing-network throughput bound");
  add_common(mva, mva_opts);
  mva->add_option("--max-n", mva_max_n, "largest population (default: cores)");
  mva->callback([&] { run_baseline(mva_opts, mva_max_n); });

  CommonOpts ssc_opts;
  uint32_t ssc_max_n = 0;
  uint32_t ssc_samples = 1;
  auto* ssc = app.add_subcommand(
      "ssc-search", "find the useful-throughput-optimal core count");
  add_common(ssc, ssc_opts);
  ssc->add_option("--max-n", ssc_max_n, "largest core count (default: cores)");
  ssc->add_option("--samples", ssc_samples, "oracle evaluations per decision");
  ssc->callback([&] { run_ssc(ssc_opts, ssc_max_n, ssc_samples); });

  std::string met_table, met_metrics, met_format = "text", met_out;
  auto* met = app.add_subcommand("contention-metrics",
                                 "co-run degradation analysis");
  met->add_option("--table", met_table, "co-run time table CSV")->required();
  met->add_option("--metric-table", met_metrics,
                  "candidate metric correlation/stability CSV");
  met->add_option("--format", met_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  met->add_option("--out", met_out, "output file (default stdout)");
  met->callback(
      [&] { run_metrics(met_table, met_metrics, met_format, met_out); });

  std::string sv_single, sv_multi, sv_format = "csv", sv_out;
  std::size_t sv_top = 10;
  auto* sv = app.add_subcommand("scalval",
                                "rank functions by scalability value");
  sv->add_option("--single", sv_single, "low-contention profile CSV")
      ->required();
  sv->add_option("--multi", sv_multi, "high-contention profile CSV")
      ->required();
  sv->add_option("--top", sv_top, "coverage cut-off rank");
  sv->add_option("--format", sv_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sv->add_option("--out", sv_out, "output file (default stdout)");
  sv->callback(
      [&] { run_scalval(sv_single, sv_multi, sv_top, sv_format, sv_out); });

  CommonOpts repro_opts;
  std::string repro_study;
  std::string repro_dir = "configs";
  bool repro_parallel = false;
  auto* rep = app.add_subcommand("repro", "run a named study end to end");
  rep->add_option("study", repro_study,
                  "throughput-curves | latency-peaks | policy-contrast | "
                  "wait-curve")
      ->required();
  rep->add_option("--configs-dir", repro_dir, "directory with c1..c4 configs");
  rep->add_option("--max-ticks", repro_opts.max_ticks, "horizon per run");
  rep->add_option("--seed", repro_opts.seed, "base seed");
  rep->add_option("--out", repro_opts.out_path, "output file");
  rep->add_flag("--parallel", repro_parallel, "run workers in parallel");
  rep->callback(
      [&] { run_repro(repro_study, repro_dir, repro_opts, repro_parallel); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const EngineError& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
